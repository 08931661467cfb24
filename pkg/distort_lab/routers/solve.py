from distort_lab.routers.base import CommandOutput, CommandRouter, arg, count, dims_range, load_space
from distort_lab.schemas.results import DistortionResultSchema
from distort_lab.services import certificates, solver
from distort_lab.utils.rationals import format_rational

router = CommandRouter("solve", "exact minimum-distortion embeddings into l_inf^n")


def _render(result) -> str:
    text = f"n={result.dims}: D in [{result.lower}, {result.upper}] ({result.status}, {result.stats.nodes} nodes)"
    if result.certified_lower is not None:
        text += f", counting bound {result.certified_lower}"
    return text


@router.command(
    "min-distortion",
    "branch and bound over pair assignments",
    arg("space"),
    arg("--dims", type=count, required=True),
    arg("--time-limit", type=float, default=None, help="seconds; the node budget stays the primary limit"),
)
def min_distortion(args, ctx):
    m = load_space(args.space)
    result = solver.min_distortion(
        m,
        args.dims,
        budget=ctx.run.budget,
        threads=ctx.run.threads,
        method=ctx.run.subproblem,
        time_limit=args.time_limit,
    )
    payload = DistortionResultSchema.from_domain(result, ctx.run).model_dump(by_alias=True)
    payload["counting_consistent"] = certificates.counting_consistent(m, args.dims, result.upper)
    return CommandOutput(payload, _render(result), 0 if payload["counting_consistent"] else 1)


@router.command(
    "curve",
    "minimum distortion for a range of dimensions, as csv",
    arg("--space", required=True),
    arg("--dims", type=dims_range, required=True, help="e.g. 1..4"),
)
def curve(args, ctx):
    m = load_space(args.space)
    rows = solver.distortion_curve(
        m, args.dims, budget=ctx.run.budget, threads=ctx.run.threads, method=ctx.run.subproblem
    )
    payload = {
        "rows": [
            {"n": n, "D_min": format_rational(r.upper), "lower": format_rational(r.lower), "status": r.status}
            for n, r in rows
        ],
        "run": ctx.run.model_dump(),
    }
    csv_text = solver.curve_csv(rows)
    return CommandOutput(payload, csv_text.rstrip("\n"), csv=csv_text)


@router.command(
    "oracle",
    "exhaustive enumeration without pruning; small spaces only",
    arg("space"),
    arg("--dims", type=count, required=True),
)
def oracle(args, ctx):
    value = solver.exhaustive_min_distortion(load_space(args.space), args.dims, ctx.run.subproblem)
    text = format_rational(value)
    return CommandOutput({"dims": args.dims, "D_min": text}, text)
