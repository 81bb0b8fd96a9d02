from proxikey.search.engine import DocResult, Fragment, score, search, search_subquery
from proxikey.search.plan import (
    PlanComponent,
    PlanKey,
    QueryPlan,
    Subquery,
    expand_subqueries,
    select_keys,
)
from proxikey.search.tables import FragmentMatcher, LemmaTable, PositionTable

__all__ = [
    "DocResult",
    "Fragment",
    "FragmentMatcher",
    "LemmaTable",
    "PlanComponent",
    "PlanKey",
    "PositionTable",
    "QueryPlan",
    "Subquery",
    "expand_subqueries",
    "score",
    "search",
    "search_subquery",
    "select_keys",
]
