"""Command-line surface.

Subcommands::

    q1 <n>                     exact optimal question count
    bound <n>                  all bounds and the gap for one n
    table --from A --to B      bound table, one row per n
    oracle --n-max K           brute-force check of the exact formula
    verify --n N [...]         strategy soundness (exhaustive or sampled)
    adversary --n N --q Q      strategy vs the weight-maximizing responder
    play --n N                 interactive game in the terminal
    serve --port P             HTTP session service (and web UI, if built)

Exit status is 0 only when every requested check passed.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import __version__
from .bounds import bound_table_lines, gap, pelc_q1, strategy_bound, volume_winnable
from .oracle import Oracle
from .strategy import GameResult, MachineQuestioner
from .verify import (
    CaseBudgetError,
    simulate_adversary,
    simulate_adversary_random,
    verify_exhaustive,
    verify_sampled,
)

MEMO_ENV = "LIARGAME_ORACLE_CACHE"


def _cmd_q1(args: argparse.Namespace) -> int:
    print(pelc_q1(args.n))
    return 0


def _cmd_bound(args: argparse.Namespace) -> int:
    n = args.n
    sb = strategy_bound(n)
    exact = pelc_q1(n)
    print(f"n = {n}")
    print(f"exact optimum q1(n)      : {exact}")
    print(f"strategy bound           : {sb.q} questions over 2^{sb.ell} padded candidates")
    if n >= 2:
        print(f"gap (strategy - optimal) : {gap(n)}")
    print(f"volume check n(q+1)<=2^q : q={exact} {'holds' if volume_winnable(n, exact) else 'fails'},"
          f" q={max(exact - 1, 0)} {'holds' if volume_winnable(n, max(exact - 1, 0)) else 'fails'}")
    return 0


def _cmd_table(args: argparse.Namespace) -> int:
    for line in bound_table_lines(args.start, args.end, args.sep):
        print(line)
    return 0


def _cmd_oracle(args: argparse.Namespace) -> int:
    oracle = Oracle(max_candidates=max(512, 2 * args.n_max), max_questions=args.j_max)
    cache = args.memo_cache or os.environ.get(MEMO_ENV)
    if cache and os.path.exists(cache):
        loaded = oracle.load_memo(cache)
        print(f"loaded {loaded} memo entries from {cache}", file=sys.stderr)
    bad = 0
    for n in range(1, args.n_max + 1):
        brute = oracle.q1(n)
        formula = pelc_q1(n)
        marker = "ok" if brute == formula else "MISMATCH"
        if brute != formula:
            bad += 1
        print(f"n={n}\toracle={brute}\tformula={formula}\t{marker}")
    if cache:
        saved = oracle.save_memo(cache)
        print(f"saved {saved} memo entries to {cache}", file=sys.stderr)
    print(f"checked 1..{args.n_max}: {'all agree' if bad == 0 else f'{bad} mismatches'}")
    return 0 if bad == 0 else 1


def _progress(done: int, total: int) -> None:
    print(f"\r{done}/{total} cases", end="", file=sys.stderr, flush=True)
    if done == total:
        print(file=sys.stderr)


def _cmd_verify(args: argparse.Namespace) -> int:
    try:
        if args.samples is not None:
            report = verify_sampled(args.n, args.samples, args.seed)
        else:
            report = verify_exhaustive(
                args.n,
                full=args.full,
                workers=args.workers,
                progress=_progress if args.full else None,
            )
    except CaseBudgetError as exc:
        print(f"refusing: {exc}", file=sys.stderr)
        return 2
    for line in report.lines():
        print(line)
    if args.transcripts and report.failures:
        os.makedirs(args.transcripts, exist_ok=True)
        for f in report.failures:
            path = os.path.join(args.transcripts, f"fail_n{report.n}_x{f.x}_lie{f.lie_at or 0}.log")
            with open(path, "w", encoding="ascii") as fh:
                fh.write(f.transcript)
        print(f"wrote {len(report.failures)} failure transcripts to {args.transcripts}")
    return 0 if report.ok else 1


def _cmd_adversary(args: argparse.Namespace) -> int:
    if args.random_questioner:
        run = simulate_adversary_random(args.n, args.q, args.seed)
    else:
        run = simulate_adversary(args.n, args.q)
    print(run.line())
    if run.passed_one_zero and not run.won:
        print("warning: a losing run passed through state (1,0)")
    if not run.min_half_weight_ok:
        print("warning: adversary failed to keep half the weight at some step")
    if args.transcripts:
        os.makedirs(args.transcripts, exist_ok=True)
        path = os.path.join(args.transcripts, f"adversary_n{args.n}_q{args.q}.log")
        with open(path, "w", encoding="ascii") as fh:
            fh.write(run.transcript_text)
        print(f"transcript written to {path}")
    return 0


def _render_members(ids: list[int], n: int) -> str:
    real = [i for i in ids if i <= n]
    ghosts = len(ids) - len(real)
    text = "{" + ", ".join(str(i) for i in real) + "}"
    if ghosts:
        text += f" plus {ghosts} bookkeeping token(s)"
    return text


def _cmd_play(args: argparse.Namespace) -> int:
    n = args.n
    driver = MachineQuestioner(n)
    print(f"Think of a number between 1 and {n}. You may lie at most once.")
    print(f"I will find it in at most {driver.budget} questions.\n")
    while True:
        nxt = driver.current_question()
        if nxt is None:
            break
        question, tag = nxt
        num = driver.asked + 1
        if question.kind == "bit":
            text = f"Is bit {question.bit} of (your number - 1) equal to 1?"
        else:
            text = f"Is your number in {_render_members(question.member_ids(driver.state.width), n)}?"
        while True:
            raw = input(f"Q{num}/{driver.budget} [{tag}] {text} (y/n) ").strip().lower()
            if raw in ("y", "yes", "n", "no"):
                break
            print("please answer y or n")
        driver.apply_answer(question, raw.startswith("y"), tag)
        summ = driver.state.summary()
        print(f"   state a={summ.a} b={summ.b} weight={summ.weight}\n")
    result = GameResult.from_driver(driver)
    if result.identified is not None:
        print(f"Your number is {result.identified} (found in {result.questions_used} questions).")
        return 0
    print("Your answers fit no number with at most one lie. Caught!")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(
        max_n=args.max_n,
        idle_timeout=args.session_timeout,
        event_log_path=args.event_log,
        ui_dir=args.ui_dir,
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="liargame", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("q1", help="exact optimal question count")
    p.add_argument("n", type=int)
    p.set_defaults(func=_cmd_q1)

    p = sub.add_parser("bound", help="all bounds for one n")
    p.add_argument("n", type=int)
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("table", help="bound table over a range")
    p.add_argument("--from", dest="start", type=int, required=True)
    p.add_argument("--to", dest="end", type=int, required=True)
    p.add_argument("--sep", default="\t")
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("oracle", help="brute-force check of the exact formula")
    p.add_argument("--n-max", type=int, default=64)
    p.add_argument("--j-max", type=int, default=24)
    p.add_argument("--memo-cache", help=f"memo file (or ${MEMO_ENV})")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("verify", help="strategy soundness sweep")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--full", action="store_true", help="ignore the case budget")
    p.add_argument("--samples", type=int, help="sampled mode instead of exhaustive")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--transcripts", help="directory for failure transcripts")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("adversary", help="strategy vs the weight adversary")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--random-questioner", action="store_true")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--transcripts", help="directory for the run transcript")
    p.set_defaults(func=_cmd_adversary)

    p = sub.add_parser("play", help="interactive terminal game")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_play)

    p = sub.add_parser("serve", help="HTTP session service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--max-n", type=int, default=1 << 20)
    p.add_argument("--session-timeout", type=float, default=3600.0)
    p.add_argument("--event-log", help="append-only event log path")
    p.add_argument("--ui-dir", help="static web UI directory to serve at /")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
