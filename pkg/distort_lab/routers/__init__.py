from distort_lab.routers.ordinal import router as ordinal_router
from distort_lab.routers.tree import router as tree_router
from distort_lab.routers.space import router as space_router
from distort_lab.routers.embed import router as embed_router
from distort_lab.routers.stepfn import router as stepfn_router
from distort_lab.routers.solve import router as solve_router
from distort_lab.routers.certify import router as certify_router
from distort_lab.routers.selftest import router as selftest_router

__all__ = [
    "ordinal_router",
    "tree_router",
    "space_router",
    "embed_router",
    "stepfn_router",
    "solve_router",
    "certify_router",
    "selftest_router",
]
