from distort_lab.models.interval_set import IntervalSet
from distort_lab.models.ordinal import ZERO, add, compare, format_ordinal, fundamental_sequence
from distort_lab.routers.base import CommandOutput, CommandRouter, arg, count, ordinal
from distort_lab.services import derived_sets

router = CommandRouter("ordinal", "cantor normal form arithmetic and derived sets of [0, beta]")


@router.command("normalize", "print the normal form of a cnf expression", arg("value", type=ordinal))
def normalize(args, ctx):
    text = format_ordinal(args.value)
    return CommandOutput({"ordinal": text}, text)


@router.command("compare", "compare two ordinals", arg("a", type=ordinal), arg("b", type=ordinal))
def compare_cmd(args, ctx):
    result = compare(args.a, args.b).value
    return CommandOutput({"a": format_ordinal(args.a), "b": format_ordinal(args.b), "comparison": result}, result)


@router.command("add", "ordinal sum a + b", arg("a", type=ordinal), arg("b", type=ordinal))
def add_cmd(args, ctx):
    text = format_ordinal(add(args.a, args.b))
    return CommandOutput({"sum": text}, text)


@router.command(
    "fundamental",
    "n-th element of the fundamental sequence of a limit ordinal",
    arg("--alpha", type=ordinal, required=True),
    arg("--n", type=count, required=True),
)
def fundamental(args, ctx):
    text = format_ordinal(fundamental_sequence(args.alpha, args.n))
    return CommandOutput({"alpha": format_ordinal(args.alpha), "n": args.n, "element": text}, text)


@router.command("cb-rank", "cantor-bendixson rank of [0, beta]", arg("--beta", type=ordinal, required=True))
def cb_rank(args, ctx):
    text = format_ordinal(derived_sets.cb_rank_interval(args.beta))
    return CommandOutput({"beta": format_ordinal(args.beta), "rank": text}, text)


@router.command(
    "in-derived",
    "whether gamma lies in the alpha-th derived set of [0, beta]",
    arg("--gamma", type=ordinal, required=True),
    arg("--alpha", type=ordinal, required=True),
    arg("--beta", type=ordinal, required=True),
)
def in_derived(args, ctx):
    member = derived_sets.in_derived_set(args.gamma, args.alpha, args.beta)
    return CommandOutput({"member": member}, "yes" if member else "no")


@router.command(
    "next-point",
    "least point above gamma in the alpha-th derived set",
    arg("--gamma", type=ordinal, required=True),
    arg("--alpha", type=ordinal, required=True),
)
def next_point(args, ctx):
    text = format_ordinal(derived_sets.next_derived_point(args.gamma, args.alpha))
    return CommandOutput({"next": text}, text)


@router.command(
    "count",
    "points of the alpha-th derived set inside [0, beta], capped",
    arg("--beta", type=ordinal, required=True),
    arg("--alpha", type=ordinal, default=ZERO),
    arg("--cap", type=count, default=None),
)
def count_cmd(args, ctx):
    cap = args.cap or ctx.settings.cap
    n = derived_sets.count_derived_in(IntervalSet.full(args.beta), args.alpha, cap)
    return CommandOutput({"count": n, "cap": cap, "capped": n >= cap}, str(n))
