"""Command-line interface.

Exit codes: 0 success, 1 no path found, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bench as bench_mod
from .baselines import ma_star
from .classify import (KNNClassifier, MajorityClassClassifier, DiskSpec,
                       accuracy, generate_dataset, knn_fit, load_dataset,
                       load_prediction_file, save_dataset)
from .generators import HierParams, demo_grid_world, gen_grid_world, gen_hier_hsg
from .hierarchy import hcoa_star
from .model import GraphFormatError, load_hsg_file
from .order import OrderMode
from .search import NoPathError, coa_star, euclidean_heuristic

EXIT_OK = 0
EXIT_NO_PATH = 1
EXIT_INPUT_ERROR = 2


def _order_mode(name: str) -> OrderMode:
    return OrderMode.TOP_CLASS if name == "top" else OrderMode.FULL_LEX


def _build_classifier(args):
    if args.classifier == "mc":
        return MajorityClassClassifier()
    if args.classifier == "knn":
        if not args.knn_model:
            raise ValueError("--knn-model is required with --classifier knn")
        return KNNClassifier.load(args.knn_model)
    if args.classifier == "table":
        if not args.predictions:
            raise ValueError("--predictions is required with --classifier table")
        return load_prediction_file(args.predictions)
    raise ValueError(f"unknown classifier {args.classifier!r}")


def cmd_plan(args) -> int:
    hsg = load_hsg_file(args.graph)
    mode = _order_mode(args.order)
    if args.algo == "coa":
        g = hsg.layer_graph(0)
        res = coa_star(g, args.start, args.goal, g.node_class, hsg.num_classes,
                       h=euclidean_heuristic(g, args.goal), mode=mode)
        out = {"algorithm": "coa", "path": res.path, "weight": res.g,
               "theta": list(res.theta), "expanded": res.expanded}
    elif args.algo == "hcoa":
        classifier = _build_classifier(args)
        res = hcoa_star(hsg, args.start, args.goal, classifier, mode=mode,
                        fallback_flat=args.fallback_flat)
        out = {"algorithm": "hcoa", "path": res.path,
               "weight": res.result0.g, "theta": list(res.result0.theta),
               "expanded": res.total_expanded,
               "classifier_queries": res.classifier_queries,
               "layer_paths": {str(p.layer): p.path for p in res.layers},
               "used_fallback": res.used_fallback}
    elif args.algo == "ma":
        g = hsg.layer_graph(0)
        res = ma_star(g, args.start, args.goal, args.alpha, g.node_class,
                      hsg.num_classes)
        out = {"algorithm": "ma", "alpha": args.alpha, "path": res.path,
               "weight": res.g, "theta": list(res.theta), "expanded": res.expanded}
    else:
        raise ValueError(f"unknown algorithm {args.algo!r}")
    if args.json:
        print(json.dumps(out))
    else:
        print(" -> ".join(out["path"]))
        print(f"weight={out['weight']:.6g} theta={out['theta']} expanded={out['expanded']}")
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.kind == "grid":
        if args.demo:
            hsg = demo_grid_world()
        else:
            hsg = gen_grid_world(args.rows, args.cols, lambda r, c: 1,
                                 num_classes=args.num_classes)
    else:
        params = HierParams(rooms=args.rooms, nodes_per_room=args.nodes_per_room,
                            doorways_per_pair=args.doorways, layers=args.layers,
                            num_classes=args.num_classes, prop2=args.prop2)
        hsg = gen_hier_hsg(params, args.seed)
    text = hsg.to_json()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text)
    return EXIT_OK


def cmd_dataset(args) -> int:
    hsg = load_hsg_file(args.graph)
    spec = DiskSpec(radius_range=(args.disk_radius_min, args.disk_radius),
                    classes=tuple(args.disk_class) if args.disk_class else ())
    samples, stats = generate_dataset(hsg, args.per_room, spec, args.seed)
    save_dataset(args.out, samples, hsg.num_classes)
    print(f"wrote {stats.generated} samples to {args.out} "
          f"({stats.discarded_disconnected} discarded, "
          f"{len(stats.skipped_rooms)} rooms skipped)")
    return EXIT_OK


def cmd_fit_knn(args) -> int:
    samples, num_classes = load_dataset(args.dataset)
    model = knn_fit(samples, num_classes, k=args.k)
    model.save(args.out)
    print(f"fitted kNN (k={args.k}) on {len(samples)} samples -> {args.out}")
    return EXIT_OK


def cmd_eval_classifier(args) -> int:
    samples, num_classes = load_dataset(args.dataset)
    if args.model:
        clf = KNNClassifier.load(args.model)
    else:
        clf = MajorityClassClassifier()
    preds = [clf.classify_sample(s) for s in samples]
    acc = accuracy(preds, [s.label for s in samples])
    print(f"accuracy: {acc:.4f} over {len(samples)} samples")
    return EXIT_OK


def cmd_bench(args) -> int:
    with open(args.suite, "r", encoding="utf-8") as fh:
        suite = json.load(fh)
    if "graph_file" in suite:
        hsg = load_hsg_file(suite["graph_file"])
    elif "generator" in suite:
        gen = suite["generator"]
        hsg = gen_hier_hsg(HierParams(**gen.get("params", {})), gen.get("seed", 0))
    else:
        raise ValueError("suite needs 'graph_file' or 'generator'")
    if "pairs" in suite:
        pairs = [(p[0], p[1]) for p in suite["pairs"]]
    else:
        pairs = bench_mod.random_pairs(hsg, suite.get("num_scenarios", 10),
                                       suite.get("seed", 0))
    scenarios = [bench_mod.Scenario(f"s{i}", hsg, s, g, suite.get("seed", 0))
                 for i, (s, g) in enumerate(pairs)]
    resources = {}
    if args.knn_model:
        resources["knn"] = KNNClassifier.load(args.knn_model)
    if args.predictions:
        resources["table"] = load_prediction_file(args.predictions)
    records, summary = bench_mod.run_suite(
        scenarios, args.algos.split(","), repetitions=args.reps,
        mode=_order_mode(args.order), resources=resources)
    if args.out_csv:
        bench_mod.write_csv(args.out_csv, records)
    if args.out_json:
        bench_mod.write_json(args.out_json, records, summary)
    print(json.dumps(summary, indent=2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="semnav",
                                     description="Hierarchical semantic path planning")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plan", help="plan a path on a graph file")
    p.add_argument("--graph", required=True)
    p.add_argument("--start", required=True)
    p.add_argument("--goal", required=True)
    p.add_argument("--algo", choices=["coa", "hcoa", "ma"], default="hcoa")
    p.add_argument("--classifier", choices=["mc", "knn", "table"], default="mc")
    p.add_argument("--knn-model")
    p.add_argument("--predictions")
    p.add_argument("--order", choices=["top", "lex"], default="top")
    p.add_argument("--alpha", type=float, default=10.0)
    p.add_argument("--fallback-flat", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("gen", help="generate a synthetic graph")
    p.add_argument("kind", choices=["grid", "hier"])
    p.add_argument("--rows", type=int, default=5)
    p.add_argument("--cols", type=int, default=5)
    p.add_argument("--demo", action="store_true",
                   help="emit the bundled road/grass/river grid")
    p.add_argument("--rooms", type=int, default=4)
    p.add_argument("--nodes-per-room", type=int, default=8)
    p.add_argument("--doorways", type=int, default=1)
    p.add_argument("--layers", type=int, default=3)
    p.add_argument("--num-classes", type=int, default=3)
    p.add_argument("--prop2", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("dataset", help="generate a classifier dataset")
    p.add_argument("--graph", required=True)
    p.add_argument("--per-room", type=int, default=100)
    p.add_argument("--disk-radius", type=float, default=3.0)
    p.add_argument("--disk-radius-min", type=float, default=1.0)
    p.add_argument("--disk-class", type=int, action="append",
                   help="restrict disk classes (repeatable); default all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_dataset)

    p = sub.add_parser("fit-knn", help="fit the kNN classifier")
    p.add_argument("--dataset", required=True)
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_fit_knn)

    p = sub.add_parser("eval-classifier", help="accuracy of a classifier on a dataset")
    p.add_argument("--dataset", required=True)
    p.add_argument("--model", help="kNN model file; omit for majority-class")
    p.set_defaults(func=cmd_eval_classifier)

    p = sub.add_parser("bench", help="run a benchmark suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--algos", default="coa,hcoa-mc")
    p.add_argument("--reps", type=int, default=1)
    p.add_argument("--order", choices=["top", "lex"], default="top")
    p.add_argument("--knn-model")
    p.add_argument("--predictions")
    p.add_argument("--out-csv")
    p.add_argument("--out-json")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NoPathError as exc:
        print(f"no path: {exc}", file=sys.stderr)
        return EXIT_NO_PATH
    except (GraphFormatError, ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
