from distort_lab.models.metric_space import GraphSpec
from distort_lab.routers.base import CommandOutput, CommandRouter, arg, count, int_list, ordinal
from distort_lab.schemas.embedding import dump_embedding, load_embedding
from distort_lab.schemas.results import EmbeddingOutcomeSchema, FamilyEmbeddingSchema
from distort_lab.services import embed, spaces
from distort_lab.utils.io import read_json

router = CommandRouter("embed", "explicit isometric embeddings")


@router.command(
    "finite",
    "coordinate embedding of a 3-level graph into l_inf over its third level",
    arg("--sizes", type=int_list, default=()),
    arg("--top", type=count, default=2),
    arg("--supplement", action="store_true", help="add separating coordinates instead of failing"),
)
def finite(args, ctx):
    m = spaces.build_graph(GraphSpec(args.sizes, args.top), size_cap=ctx.run.size_cap)
    e = embed.embed_finite(m, supplement=args.supplement)
    text = f"isometric into l_inf^{e.dims} ({m.size} points)"
    if e.repaired_pairs:
        text += f", {len(e.repaired_pairs)} supplemented coordinates"
    return CommandOutput(dump_embedding(e), text)


@router.command(
    "family",
    "staged step-function embedding of a family space",
    arg("--alpha", type=ordinal, required=True),
    arg("--path", type=int_list, default=()),
    arg("--top", type=count, default=2),
)
def family(args, ctx):
    result = embed.embed_family(args.alpha, args.path, ctx.run.width, top_size=args.top, size_cap=ctx.run.size_cap)
    e = result.embedding
    text = f"isometric into C([0, {e.bound}]) ({e.domain.size} points, {len(result.stages)} stages)"
    return CommandOutput(FamilyEmbeddingSchema.from_domain(result).model_dump(by_alias=True), text)


@router.command(
    "amalgam",
    "glue embedding files of amalgam components",
    arg("embeddings", nargs="+"),
    arg("--shared", required=True, help="comma separated shared labels, including bot"),
)
def amalgam(args, ctx):
    parts = [load_embedding(read_json(path)) for path in args.embeddings]
    shared = [label.strip() for label in args.shared.split(",") if label.strip()]
    e = embed.embed_amalgam(parts, shared)
    consistent = embed.restriction_consistent(e, parts, shared)
    payload = dump_embedding(e)
    payload["restriction_consistent"] = consistent
    text = f"isometric into C([0, {e.bound}]) with {e.pattern_count} sign patterns"
    return CommandOutput(payload, text, 0 if consistent else 1)


@router.command(
    "outcomes",
    "whether the plain coordinate map is isometric, per size vector",
    arg("--levels", type=int, default=3),
    arg("--max-size", type=count, default=4),
)
def outcomes(args, ctx):
    rows = embed.finite_embedding_outcomes(args.levels, args.max_size)
    payload = {"outcomes": [EmbeddingOutcomeSchema.from_domain(o).model_dump() for o in rows]}
    failing = [o for o in rows if not o.isometric]
    text = "\n".join(
        f"{list(o.sizes)}: {'isometric' if o.isometric else f'fails at {o.failing_pair}'}" for o in rows
    )
    text += f"\n{len(rows) - len(failing)}/{len(rows)} isometric"
    return CommandOutput(payload, text)
