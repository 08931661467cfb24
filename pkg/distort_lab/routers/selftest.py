from distort_lab.routers.base import CommandOutput, CommandRouter, arg, count
from distort_lab.schemas.results import SelftestReportSchema
from distort_lab.services.selftest import CHECKS, SelftestScale, run_selftest

router = CommandRouter("selftest", "run the invariant suite")


@router.command(
    "run",
    "execute every check and report pass/fail with runtimes",
    arg("--only", default=None, help=f"comma separated subset of: {', '.join(name for name, _ in CHECKS)}"),
    arg("--samples", type=count, default=None, help="random ordinal triples"),
    arg("--inject-violation", action="store_true", help="add a space that breaks the triangle inequality"),
)
def run(args, ctx):
    scale = SelftestScale(
        seed=ctx.run.seed,
        ordinal_samples=args.samples or ctx.settings.ordinal_samples,
        budget=ctx.run.budget,
        threads=ctx.run.threads,
        inject_violation=args.inject_violation,
    )
    only = [name.strip() for name in args.only.split(",")] if args.only else None
    report = run_selftest(scale, only)
    lines = [f"{'ok  ' if c.passed else 'FAIL'} {c.name} ({c.duration_ms} ms) {c.detail}" for c in report.checks]
    lines.append("all checks passed" if report.passed else f"failed: {', '.join(report.failed())}")
    return CommandOutput(
        SelftestReportSchema.from_domain(report, ctx.run).model_dump(),
        "\n".join(lines),
        0 if report.passed else 1,
    )
