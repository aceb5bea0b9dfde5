# main.py

import argparse
import logging
import sys

import pandas as pd

# --- Configuration Imports ---
from config import settings

# --- Core Imports ---
from core import fock_crystal
from core.branching import (LabelKind, branching_consistency, label_correspondence,
                            restriction_ladder, socle_of_i_restriction)
from core.embeddings import b_ap_membership, f_v, gamma, gamma_inverse, verify_embedding
from core.errors import BranchingError, DomainError, InvariantError
from core.multiseg_crystal import Convention, crystal_graph_binf
from core.partitions import Multicharge, multipartitions_of, parse_multipartition
from core.segments import EMPTY_SYMBOL, DimensionVector, parse_multisegment

# --- Model Imports ---
from models.affine_hecke import verify_bernstein, verify_h2_example, verify_presentation, verify_sigma
from models.canonical_basis import canonical_basis, canonical_basis_for, crystal_from_canonical
from models.hall_algebra import HallElement, algebra_for

# --- Analysis Imports ---
from analysis.graphs import to_dot, to_json
from analysis import reports

# --- Utility Imports ---
from utils.helpers import save_dataframe_to_csv, save_text


def _charge(args) -> Multicharge:
    return Multicharge.parse(args.charge, args.e)


def _require_input(args, what: str) -> str:
    if args.input is None:
        raise DomainError(f"--input is required: {what}")
    return args.input


def _emit_frame(df: pd.DataFrame, args, filename: str) -> str:
    """Renders a report table in the requested format and saves it when --save is given."""
    if args.format == "dot":
        raise DomainError("--format dot applies to binf-graph and fock-graph only")
    if args.save:
        save_dataframe_to_csv(df, settings.RESULTS_DIR, filename)
    if args.format == "json":
        return reports.frame_to_json(df)
    return reports.frame_to_text(df)


def _emit_graph(graph, args, template: str, **fields) -> str:
    if args.format == "table":
        text = reports.frame_to_text(reports.layer_table(graph))
        ext = "txt"
    elif args.format == "json":
        text, ext = to_json(graph), "json"
    else:
        text, ext = to_dot(graph), "dot"
    if args.save:
        save_text(text, settings.RESULTS_DIR, template.format(ext=ext, **fields))
    return text


# --- Crystal Commands ---

def cmd_binf_graph(args) -> str:
    conv = Convention.parse(args.convention)
    graph = crystal_graph_binf(args.e, conv, args.rank)
    return _emit_graph(graph, args, settings.BINF_GRAPH_FILENAME, e=args.e, rank=args.rank, convention=conv.value)


def cmd_fock_graph(args) -> str:
    charge = _charge(args)
    graph = fock_crystal.fock_crystal_graph(charge, args.rank)
    return _emit_graph(graph, args, settings.FOCK_GRAPH_FILENAME, e=args.e, charge=charge.label(), rank=args.rank)


def cmd_flotw_list(args) -> str:
    charge = _charge(args)
    flotw = fock_crystal.enumerate_flotw(charge, args.rank)
    logging.info(f"✅ {len(flotw)} FLOTW {charge.level}-partitions of rank {args.rank}")
    filename = settings.FLOTW_LIST_FILENAME.format(e=args.e, charge=charge.label(), rank=args.rank)
    return _emit_frame(reports.flotw_table(flotw), args, filename)


def _membership(args, test, name: str) -> str:
    charge = _charge(args)
    if args.input is not None:
        partitions = [parse_multipartition(args.input, charge)]
    else:
        partitions = list(multipartitions_of(charge, args.rank))
    df = reports.membership_table(partitions, test)
    logging.info(f"{name}: {int(df['member'].sum())} of {len(df)} multipartitions are members")
    return _emit_frame(df, args, f"{name}_e{args.e}_v{charge.label()}_n{args.rank}.csv")


def cmd_kleshchev_test(args) -> str:
    return _membership(args, fock_crystal.is_kleshchev, "kleshchev")


def cmd_uglov_test(args) -> str:
    return _membership(args, fock_crystal.is_uglov, "uglov")


# --- Embedding Commands ---

def cmd_gamma_map(args) -> str:
    charge = _charge(args)
    lam = parse_multipartition(_require_input(args, "a FLOTW (or, with --inverse, Kleshchev) multipartition"), charge)
    image = gamma_inverse(lam) if args.inverse else gamma(lam)
    if args.format == "json":
        return reports.dumps({"input": lam.to_json(), "image": image.to_json()})
    return f"{image}\n"


def cmd_fv_map(args) -> str:
    charge = _charge(args)
    lam = parse_multipartition(_require_input(args, "a FLOTW multipartition"), charge)
    psi = f_v(lam)
    if args.format == "json":
        return reports.dumps({"input": lam.to_json(), "multisegment": psi.to_json(), "label": str(psi)})
    return f"{psi}\n"


def cmd_bap_test(args) -> str:
    charge = _charge(args)
    if args.input is not None:
        psi = parse_multisegment(args.input, args.e)
        member, lam = b_ap_membership(psi, charge)
        df = pd.DataFrame([{"multisegment": str(psi), "member": member,
                            "preimage": str(lam) if lam is not None else EMPTY_SYMBOL}])
        return _emit_frame(df, args, f"bap_e{args.e}_v{charge.label()}.csv")
    df = verify_embedding(charge, args.rank)
    return _emit_frame(df, args, f"embedding_e{args.e}_v{charge.label()}_n{args.rank}.csv")


# --- Hall Algebra Commands ---

def cmd_hall_product(args) -> str:
    algebra = algebra_for(args.e)
    if args.word is not None:
        try:
            word = [int(x) for x in args.word.split(",") if x.strip() != ""]
        except ValueError:
            raise DomainError(f"malformed word '{args.word}' (expected colors like 0,1,2)")
        result = algebra.monomial(word)
    elif args.left is not None and args.right is not None:
        left = HallElement.basis(parse_multisegment(args.left, args.e))
        right = HallElement.basis(parse_multisegment(args.right, args.e))
        result = algebra.product(left, right)
    else:
        raise DomainError("hall-product needs --word, or both --left and --right")
    logging.info(f"✅ Product has {len(result.terms)} terms")
    if args.format == "json":
        text = reports.hall_element_json(result)
        if args.save:
            save_text(text, settings.RESULTS_DIR, settings.HALL_PRODUCT_FILENAME.format(e=args.e).replace(".csv", ".json"))
        return text
    return _emit_frame(reports.hall_element_table(result), args, settings.HALL_PRODUCT_FILENAME.format(e=args.e))


def cmd_canonical_basis(args) -> str:
    if args.weight is None:
        raise DomainError("--weight is required, e.g. --weight 1,1,1")
    alpha = DimensionVector.parse(args.weight, args.e)
    if len(alpha.entries) != args.e:
        raise DomainError(f"weight '{args.weight}' must have {args.e} entries")
    basis = canonical_basis_for(args.e)
    if args.check_crystal:
        df = crystal_from_canonical(alpha, basis)
        if not df.empty and not df["consistent"].all():
            raise InvariantError("the crystal read off the canonical basis disagrees with B(infinity)")
        return _emit_frame(df, args, f"crystal_check_e{args.e}_w{'_'.join(map(str, alpha.entries))}.csv")
    elements = canonical_basis(alpha, basis)
    filename = settings.CANONICAL_BASIS_FILENAME.format(e=args.e, weight="_".join(map(str, alpha.entries)))
    if args.format == "json":
        text = reports.canonical_basis_json(elements, basis)
        if args.save:
            save_text(text, settings.RESULTS_DIR, filename.replace(".csv", ".json"))
        return text
    return _emit_frame(reports.canonical_basis_table(elements, basis), args, filename)


# --- Affine Hecke Commands ---

def cmd_hecke_verify(args) -> str:
    trials = args.trials if args.trials is not None else settings.HECKE_RANDOM_TRIALS
    frames = [verify_presentation(args.n, trials=trials, seed=args.seed)]
    if args.n >= 2:
        bernstein = verify_bernstein(args.n, trials=min(trials, settings.BERNSTEIN_TRIALS), seed=args.seed)
        frames.append(pd.DataFrame([{"relation": "Bernstein", "inputs_checked": len(bernstein), "status": "pass"}]))
    frames.append(verify_sigma(args.n, trials=min(trials, 50), seed=args.seed))
    if args.n == 2 and args.e == 3:
        report = verify_h2_example()
        frames.append(pd.DataFrame([{"relation": f"example: {name}", "inputs_checked": 1, "status": "pass"}
                                    for name in report.relations]))
    df = pd.concat(frames, ignore_index=True)
    return _emit_frame(df, args, settings.HECKE_REPORT_FILENAME.format(n=args.n))


# --- Branching Commands ---

def cmd_branch(args) -> str:
    if args.label is None:
        raise DomainError("--label is required (an aperiodic multisegment)")
    conv = Convention.parse(args.convention)
    psi = parse_multisegment(args.label, args.e)
    if args.i is not None:
        socle = socle_of_i_restriction(psi, args.i, conv)
        rows = [{"i": args.i, "socle": str(socle) if socle is not None else "0"}]
    else:
        rows = [{"i": i, "socle": str(label)} for i, label in restriction_ladder(psi, conv)]
    return _emit_frame(pd.DataFrame(rows, columns=["i", "socle"]), args, f"branch_e{args.e}_{conv.value}.csv")


def cmd_labels(args) -> str:
    charge = _charge(args)
    if args.input is None:
        df = branching_consistency(charge, args.rank)
        filename = settings.BRANCHING_REPORT_FILENAME.format(e=args.e, charge=charge.label(), rank=args.rank)
        return _emit_frame(df, args, filename)
    kind = LabelKind.parse(getattr(args, "from"))
    if kind is LabelKind.MULTISEGMENT:
        x = parse_multisegment(args.input, args.e)
    else:
        x = parse_multipartition(args.input, charge)
    triple = label_correspondence(x, kind, charge)
    if args.format == "json":
        return reports.dumps(triple.to_json())
    df = pd.DataFrame([{"kleshchev": str(triple.kleshchev), "flotw": str(triple.flotw),
                        "multisegment": str(triple.multisegment),
                        "tail": triple.multisegment.tail_notation()}])
    return _emit_frame(df, args, f"labels_e{args.e}_v{charge.label()}.csv")


COMMANDS = {
    "binf-graph": (cmd_binf_graph, "Layers of B(infinity) on aperiodic multisegments."),
    "fock-graph": (cmd_fock_graph, "Component of the empty l-partition in the Fock space crystal."),
    "flotw-list": (cmd_flotw_list, "FLOTW l-partitions of a given rank."),
    "kleshchev-test": (cmd_kleshchev_test, "Kleshchev membership of one or all l-partitions."),
    "uglov-test": (cmd_uglov_test, "Uglov membership of one or all l-partitions."),
    "gamma-map": (cmd_gamma_map, "FLOTW to Kleshchev label (or back with --inverse)."),
    "fv-map": (cmd_fv_map, "Multisegment of rows of a FLOTW l-partition."),
    "bap-test": (cmd_bap_test, "Membership in the image of f_v, or the full intertwining check."),
    "hall-product": (cmd_hall_product, "Products in the twisted Hall algebra."),
    "canonical-basis": (cmd_canonical_basis, "Canonical basis elements of a given weight."),
    "hecke-verify": (cmd_hecke_verify, "Relation sweeps for the affine Hecke algebra H_n."),
    "branch": (cmd_branch, "Socles of i-restrictions of a simple module."),
    "labels": (cmd_labels, "Kleshchev / FLOTW / multisegment label correspondence."),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--e", type=int, default=settings.DEFAULT_E, help="order of the root of unity")
    common.add_argument("--charge", default="0", help="comma separated multicharge v")
    common.add_argument("--rank", type=int, default=settings.DEFAULT_RANK)
    common.add_argument("--convention", default="head", choices=["head", "tail"])
    common.add_argument("--format", default="table", choices=["json", "dot", "table"])
    common.add_argument("--seed", type=int, default=settings.DEFAULT_SEED)
    common.add_argument("--input", default=None, help="a multipartition or multisegment")
    common.add_argument("--save", action="store_true", help=f"also write results under {settings.RESULTS_DIR}/")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", action="store_true")
    verbosity.add_argument("--quiet", action="store_true")

    parser = argparse.ArgumentParser(description="Crystals, Hall algebras and branching rules for cyclotomic Hecke algebras.")
    subparsers = parser.add_subparsers(dest="command", required=True)
    sub = {name: subparsers.add_parser(name, parents=[common], help=text)
           for name, (_, text) in COMMANDS.items()}

    sub["gamma-map"].add_argument("--inverse", action="store_true")
    sub["hall-product"].add_argument("--left")
    sub["hall-product"].add_argument("--right")
    sub["hall-product"].add_argument("--word", help="comma separated residues, e.g. 0,1,2")
    sub["canonical-basis"].add_argument("--weight", help="comma separated alpha-coefficients")
    sub["canonical-basis"].add_argument("--check-crystal", action="store_true")
    sub["hecke-verify"].add_argument("--n", type=int, default=2)
    sub["hecke-verify"].add_argument("--trials", type=int, default=None)
    sub["branch"].add_argument("--label")
    sub["branch"].add_argument("--i", type=int, default=None)
    sub["labels"].add_argument("--from", default="flotw", choices=[k.value for k in LabelKind])
    return parser


def main(argv=None) -> int:
    """
    Entry point: parses the command line, runs one command and prints its result to stdout.

    Returns:
        int: 0 on success, else the exit code of the raised BranchingError.
    """
    args = build_parser().parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else settings.LOG_LEVEL
    logging.basicConfig(level=level, format=settings.LOG_FORMAT, stream=sys.stderr, force=True)
    logging.info(f"🚀 Running '{args.command}' (e={args.e})")

    handler, _ = COMMANDS[args.command]
    try:
        output = handler(args)
    except DomainError as exc:
        logging.error(f"Domain error: {exc}")
        return exc.exit_code
    except InvariantError as exc:
        logging.critical(f"Invariant failure: {exc}")
        return exc.exit_code
    except BranchingError as exc:
        logging.error(f"Resource bound: {exc}")
        return exc.exit_code
    sys.stdout.write(output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
