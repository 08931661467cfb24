from distort_lab.models.ordinal import format_ordinal
from distort_lab.models.tree import TreeSpec
from distort_lab.routers.base import CommandOutput, CommandRouter, arg, int_list, ordinal
from distort_lab.schemas.tree import FiniteTreeSchema
from distort_lab.services import trees

router = CommandRouter("tree", "the well-founded trees T_{alpha+1}")

ALPHA = arg("--alpha", type=ordinal, required=True, help="tree parameter alpha of T_{alpha+1}")
PATH = arg("--path", type=int_list, default=(), help="comma separated node, e.g. 2,1")


@router.command("index", "ordinal index o(T_{alpha+1})", ALPHA)
def index(args, ctx):
    text = format_ordinal(trees.index(TreeSpec(args.alpha)))
    return CommandOutput({"alpha": format_ordinal(args.alpha), "index": text}, text)


@router.command("contains", "membership of a path", ALPHA, PATH)
def contains(args, ctx):
    member = trees.contains(TreeSpec(args.alpha), args.path)
    return CommandOutput({"path": list(args.path), "member": member}, "yes" if member else "no")


@router.command("rank", "derivation stage at which a node becomes maximal", ALPHA, PATH)
def rank(args, ctx):
    text = format_ordinal(trees.rank(TreeSpec(args.alpha), args.path))
    return CommandOutput({"path": list(args.path), "rank": text}, text)


@router.command("survival", "last derivation stage a node survives", ALPHA, PATH)
def survival(args, ctx):
    text = format_ordinal(trees.survival(TreeSpec(args.alpha), args.path))
    return CommandOutput({"path": list(args.path), "survival": text}, text)


@router.command("truncate", "finite truncation with brute-force and predicted indices", ALPHA)
def truncate(args, ctx):
    spec = TreeSpec(args.alpha)
    t = trees.truncate(spec, ctx.run.width)
    brute = trees.index_finite(t)
    predicted = trees.truncated_index(spec, ctx.run.width)
    stages = trees.maximal_stages(t)
    mismatched = [list(p) for p, s in stages.items() if trees.truncated_rank(spec, p, ctx.run.width) != s]
    payload = {
        "alpha": format_ordinal(args.alpha),
        "width": ctx.run.width,
        "tree": FiniteTreeSchema.from_domain(t).model_dump(),
        "brute_index": brute,
        "predicted_index": predicted,
        "rank_mismatches": mismatched,
    }
    ok = brute == predicted and not mismatched
    text = f"{len(t)} nodes, brute-force index {brute}, predicted {predicted}"
    return CommandOutput(payload, text, 0 if ok else 1)
