from distort_lab.routers.base import CommandOutput, CommandRouter, arg, count
from distort_lab.schemas.embedding import load_embedding
from distort_lab.schemas.results import ByproductParamsSchema, CertificateSchema, CountingReportSchema
from distort_lab.services import certificates
from distort_lab.utils.io import read_json
from distort_lab.utils.rationals import parse_rational

router = CommandRouter("certify", "counting certificates for distortion below 2")

D_ARG = arg("--D", dest="D", type=parse_rational, required=True, help="distortion bound, 1 <= D < 2")


@router.command(
    "counting",
    "base k, C_D and the least number of coordinates for m separated points",
    D_ARG,
    arg("--m", type=count, required=True),
)
def counting(args, ctx):
    c = certificates.certificate(args.D, args.m)
    text = f"k = {c.base}, C_D = {c.c_d:.6f}, n_min = {c.n_min}"
    return CommandOutput(CertificateSchema.from_domain(c).model_dump(), text)


@router.command("byproduct", "parameters k and n = 2^(2+k) with C_D log k > m", D_ARG, arg("--m", type=count, required=True))
def byproduct(args, ctx):
    p = certificates.byproduct_params(args.D, args.m)
    n_text = str(p.n) if p.n is not None else f"2^{p.n_exponent}"
    return CommandOutput(ByproductParamsSchema.from_domain(p).model_dump(), f"k = {p.k}, n = {n_text}")


@router.command(
    "packing",
    "capacity of [-D, D]^n for (4 - 2D)-separated sets, formula against grid search",
    D_ARG,
    arg("--n", type=count, required=True),
)
def packing(args, ctx):
    formula = certificates.max_separated(args.D, args.n)
    oracle = certificates.packing_number(args.D, args.n)
    payload = {"formula": formula, "grid_oracle": oracle, "agree": formula == oracle}
    return CommandOutput(payload, f"{formula} (grid search {oracle})", 0 if formula == oracle else 1)


@router.command("witness", "check the counting argument on an embedding file", arg("embedding"), D_ARG)
def witness(args, ctx):
    report = certificates.verify_witness_counting(load_embedding(read_json(args.embedding)), args.D)
    status = "vacuous" if report.vacuous else ("passed" if report.passed else "FAILED")
    text = f"{status}: {report.choices} choices, |Gamma| = {report.gamma_size} >= {report.min_coords}"
    text += "".join(f"\n  {f}" for f in report.failures)
    return CommandOutput(CountingReportSchema.from_domain(report).model_dump(), text, 0 if report.passed else 1)
