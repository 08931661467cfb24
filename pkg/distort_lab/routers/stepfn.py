from distort_lab.models.ordinal import ZERO
from distort_lab.routers.base import CommandOutput, CommandRouter, arg, count, label_pairs, ordinal
from distort_lab.schemas.embedding import load_embedding
from distort_lab.schemas.results import WitnessReportSchema
from distort_lab.services import embed, stepfn
from distort_lab.utils.exceptions import DomainError, UsageError
from distort_lab.utils.io import read_json
from distort_lab.utils.rationals import format_rational, parse_rational

router = CommandRouter("stepfn", "sup-norm geometry of step-function embeddings")


@router.command(
    "verify-embedding",
    "distortion of an embedding and the witness region of label pairs",
    arg("embedding"),
    arg("--pairs", type=label_pairs, default=None),
    arg("--D", dest="D", type=parse_rational, default=None),
    arg("--alpha", type=ordinal, action="append", default=None, help="derived-set order to count; repeatable"),
    arg("--cap", type=count, default=None),
)
def verify_embedding(args, ctx):
    e = embed.as_step(load_embedding(read_json(args.embedding)))
    c1, c2 = stepfn.embedding_distortion(e)
    if c1 == 0:
        raise DomainError("embedding not injective")
    ratio = c2 / c1
    pair = stepfn.first_non_isometric_pair(e)
    payload = {
        "bound": str(e.bound),
        "C1": format_rational(c1),
        "C2": format_rational(c2),
        "distortion": format_rational(ratio),
        "isometric": pair is None,
        "first_non_isometric_pair": list(pair) if pair else None,
    }
    lines = [f"C1 = {c1}, C2 = {c2}, distortion {ratio}"]
    if args.pairs:
        D = args.D if args.D is not None else ratio
        alphas = args.alpha or [ZERO]
        report = stepfn.witness_report(e, args.pairs, D, alphas, args.cap or ctx.settings.cap)
        payload["witness"] = WitnessReportSchema.from_domain(report).model_dump()
        lines.append(f"witness region {report.region}")
        lines += [f"  derived set {alpha}: {n} points" for alpha, n in report.counts]
    return CommandOutput(payload, "\n".join(lines))


@router.command(
    "distance",
    "sup distance between the images of two points",
    arg("embedding"),
    arg("--a", required=True),
    arg("--b", required=True),
)
def distance(args, ctx):
    e = embed.as_step(load_embedding(read_json(args.embedding)))
    for label in (args.a, args.b):
        if label not in e.domain.position:
            raise UsageError(f"{label!r} is not a point of the embedded space")
    value = stepfn.sup_distance(e.image(args.a), e.image(args.b))
    text = format_rational(value)
    payload = {"a": args.a, "b": args.b, "distance": text, "metric": format_rational(e.domain.d(args.a, args.b))}
    return CommandOutput(payload, text)
