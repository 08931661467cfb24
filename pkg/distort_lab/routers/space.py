from distort_lab.models.metric_space import GraphSpec
from distort_lab.routers.base import CommandOutput, CommandRouter, arg, count, int_list, load_space, ordinal
from distort_lab.schemas.metric_space import MetricSpaceSchema
from distort_lab.schemas.results import MetricReportSchema
from distort_lab.services import spaces

router = CommandRouter("space", "3-level graphs, sup-amalgams and the staged family spaces")


def _space_output(m):
    return CommandOutput(
        MetricSpaceSchema.from_domain(m).model_dump(by_alias=True),
        f"{m.size} points, diameter {m.diameter}",
    )


@router.command(
    "build-graph",
    "shortest-path metric of M(A_0^top, A_1^n_1, ..., A_h^n_h)",
    arg("--sizes", type=int_list, default=(), help="extra level sizes, e.g. 2,3"),
    arg("--top", type=count, default=2, help="size of the top alphabet A_0"),
)
def build_graph(args, ctx):
    return _space_output(spaces.build_graph(GraphSpec(args.sizes, args.top), size_cap=ctx.run.size_cap))


@router.command(
    "family",
    "width-truncated family space at a node of T_{alpha+1}",
    arg("--alpha", type=ordinal, required=True),
    arg("--path", type=int_list, default=()),
    arg("--stage", type=ordinal, default=None, help="derivation stage; must lie between rank and survival"),
    arg("--top", type=count, default=2),
)
def family(args, ctx):
    m = spaces.family_space(
        args.alpha, args.path, ctx.run.width, stage=args.stage, top_size=args.top, size_cap=ctx.run.size_cap
    )
    return _space_output(m)


@router.command(
    "height-witness",
    "space realizing the height-alpha obstruction",
    arg("--alpha", type=ordinal, required=True),
    arg("--top", type=count, default=2),
)
def height_witness(args, ctx):
    return _space_output(
        spaces.height_witness_space(args.alpha, ctx.run.width, top_size=args.top, size_cap=ctx.run.size_cap)
    )


@router.command(
    "amalgam",
    "sup-amalgam of metric space files over shared labels",
    arg("spaces", nargs="+"),
    arg("--shared", required=True, help="comma separated shared labels, including bot"),
)
def amalgam(args, ctx):
    components = [load_space(path) for path in args.spaces]
    shared = [label.strip() for label in args.shared.split(",") if label.strip()]
    return _space_output(spaces.sup_amalgam(components, shared, size_cap=ctx.run.size_cap))


@router.command(
    "random",
    "shortest-path metric of a seeded random weighted graph",
    arg("--points", type=count, required=True),
    arg("--max-weight", type=count, default=3),
)
def random_space(args, ctx):
    return _space_output(spaces.random_graph_metric(ctx.run.seed, args.points, max_weight=args.max_weight))


@router.command("validate", "exhaustive metric axiom check of a space file", arg("space"))
def validate(args, ctx):
    report = spaces.validate_metric(load_space(args.space))
    lines = [f"{report.point_count} points: {'ok' if report.passed else 'FAILED'}"]
    lines += [f"  {v.kind} at {', '.join(v.points)}: {v.detail}" for v in report.violations]
    return CommandOutput(
        MetricReportSchema.from_domain(report).model_dump(),
        "\n".join(lines),
        0 if report.passed else 1,
    )
