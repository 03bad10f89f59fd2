"""Command handlers for the isingdual CLI."""
import logging
import sys
import time
from argparse import Namespace
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, TextIO, Tuple

from rich.console import Console
from rich.markup import escape

from ..config import Settings
from ..errors import UsageError
from ..graph.trees import TreePartition, maximum_spanning_tree, random_spanning_tree
from ..log import THEME, err_console
from ..model.ising import IsingModel
from ..oracle.exact import (
    brute_force_log_Z,
    brute_force_log_Zd,
    brute_force_log_ZM,
    exact_chi_square_dual,
    exact_chi_square_primal,
)
from ..sampling import EstimatorRegistry
from ..sampling.base import EstimateReport
from ..topology.edgelist import load_edge_list, render_edge_list
from ..topology.generators import build_topology, couplings_constant, couplings_from_spec, unknown_choice
from .report import (
    Report,
    build_report,
    check_no_nan,
    estimate_result,
    log_result,
    render_csv,
    render_json,
    render_table,
)

logger = logging.getLogger(__name__)

TREE_KINDS = ('mst', 'random')


@dataclass
class CommandResult:
    success: bool
    message: str = ""
    data: Any = None


def describe_topology(args: Namespace) -> str:
    if args.topology == 'chain' or args.topology == 'complete':
        return f"{args.topology}(n={args.n})"
    if args.topology == 'grid':
        extra = ",periodic" if args.periodic else ""
        return f"grid(rows={args.rows},cols={args.cols}{extra})"
    return str(args.topology)


def parse_tree_spec(spec: str) -> Tuple[str, Optional[int]]:
    """``mst`` or ``random:<seed>``."""
    kind, _, rest = spec.partition(':')
    if kind == 'mst' and not rest:
        return kind, None
    if kind == 'random':
        try:
            seed = int(rest, 0)
        except ValueError:
            raise UsageError(f"bad tree spec {spec!r}; use random:<seed>") from None
        if seed < 0:
            raise UsageError(f"tree seed must be >= 0, got {seed}")
        return kind, seed
    if kind not in TREE_KINDS:
        raise unknown_choice("tree kind", kind, list(TREE_KINDS))
    raise UsageError(f"bad tree spec {spec!r}; use mst or random:<seed>")


def choose_tree(model: IsingModel, spec: str) -> TreePartition:
    kind, seed = parse_tree_spec(spec)
    if kind == 'random':
        return random_spanning_tree(model.graph, seed)
    return maximum_spanning_tree(model.graph, model.tree_weights())


class CommandHandler:
    """Runs one subcommand and writes its report to standard output."""

    def __init__(self, settings: Settings, stdout: Optional[TextIO] = None,
                 console: Optional[Console] = None):
        self.settings = settings
        self.stdout = stdout or sys.stdout
        self.console = console or err_console
        self.out_console = Console(file=self.stdout, theme=THEME)

    # Shared plumbing

    def _seed(self, args: Namespace) -> int:
        return self.settings.seed if args.seed is None else args.seed

    def _threads(self, args: Namespace) -> int:
        return self.settings.threads if args.threads is None else args.threads

    def load_model(self, args: Namespace) -> Tuple[IsingModel, Dict[str, Any]]:
        if args.model is not None:
            try:
                graph, couplings = load_edge_list(args.model)
            except OSError as e:
                raise UsageError(f"cannot read {args.model}: {e.strerror or e}") from None
            topology = f"file:{Path(args.model).name}"
        else:
            if args.topology is None:
                raise UsageError("give --topology or --model")
            graph = build_topology(args.topology, n=args.n, rows=args.rows, cols=args.cols,
                                   periodic=args.periodic)
            couplings = couplings_from_spec(graph, args.coupling, default_seed=self._seed(args))
            topology = describe_topology(args)
        model = IsingModel.create(graph, couplings)
        info = {'vertices': graph.vertex_count, 'edges': graph.edge_count, 'topology': topology}
        logger.info("model %s: |V|=%d |E|=%d", topology, graph.vertex_count, graph.edge_count)
        return model, info

    def _dual_tree(self, args: Namespace, model: IsingModel, partition: TreePartition) -> TreePartition:
        spec = getattr(args, 'dual_tree', None)
        return partition if spec is None else choose_tree(model, spec)

    def _estimate(self, name: str, model: IsingModel, partition: TreePartition,
                  args: Namespace) -> EstimateReport:
        estimator = EstimatorRegistry.get_estimator(name, model, partition)
        with self.console.status(f"[{name}]{name} estimator") as status:
            def progress(done: int, total: int) -> None:
                status.update(f"[{name}]{name} estimator[/] block {done}/{total}")
            return estimator.run(args.samples, self._seed(args), self._threads(args), progress)

    def emit(self, report: Report, fmt: str) -> None:
        check_no_nan(report['result'])
        if fmt == 'table':
            render_table(report, self.out_console)
        elif fmt == 'csv':
            self.stdout.write(render_csv(report))
        else:
            self.stdout.write(render_json(report))
        self.stdout.flush()

    # Subcommands

    def cmd_exact(self, args: Namespace) -> CommandResult:
        model, info = self.load_model(args)
        partition = choose_tree(model, args.tree)
        threads = self._threads(args)
        limit = self.settings.max_enum_bits
        started = time.perf_counter()

        with self.console.status("enumerating"):
            log_Z = brute_force_log_Z(model, threads, limit)
            result = log_result(log_Z)
            result.update({'std_error_log': 0.0, 'chi_square': None, 'samples': None, 'seed': None})
            if args.all_domains:
                result['log_ZM'] = brute_force_log_ZM(model, partition, threads, limit)
                result['log_Zd'] = (brute_force_log_Zd(model, partition, threads, limit)
                                    if model.is_ferromagnetic else None)
            if args.chi_square:
                result['chi_square_primal'] = exact_chi_square_primal(model, partition, threads, limit)
                result['chi_square_dual'] = (exact_chi_square_dual(model, partition, threads, limit)
                                             if model.is_ferromagnetic else None)
        result['wall_time_seconds'] = time.perf_counter() - started
        return CommandResult(True, "exact", build_report('exact', info, partition, result))

    def _cmd_single(self, name: str, args: Namespace) -> CommandResult:
        model, info = self.load_model(args)
        partition = choose_tree(model, args.tree)
        report = self._estimate(name, model, partition, args)
        return CommandResult(True, name, build_report(name, info, partition, estimate_result(report)))

    def cmd_primal(self, args: Namespace) -> CommandResult:
        return self._cmd_single('primal', args)

    def cmd_dual(self, args: Namespace) -> CommandResult:
        return self._cmd_single('dual', args)

    def cmd_compare(self, args: Namespace) -> CommandResult:
        model, info = self.load_model(args)
        partition = choose_tree(model, args.tree)
        dual_partition = self._dual_tree(args, model, partition)
        # fail before spending time on the primal run
        model.require_ferromagnetic()
        primal = self._estimate('primal', model, partition, args)
        dual = self._estimate('dual', model, dual_partition, args)
        result = {'primal': estimate_result(primal), 'dual': estimate_result(dual)}
        return CommandResult(True, "compare",
                             build_report('compare', info, partition, result, dual_partition))

    def cmd_sweep(self, args: Namespace) -> CommandResult:
        values = parse_values(args.values)
        base, info = self.load_model(args)
        rows: List[Dict[str, Any]] = []
        partition = dual_partition = None
        for J in values:
            model = IsingModel(base.graph, couplings_constant(base.graph, J))
            model.require_ferromagnetic()
            partition = choose_tree(model, args.tree)
            dual_partition = self._dual_tree(args, model, partition)
            primal = self._estimate('primal', model, partition, args)
            dual = self._estimate('dual', model, dual_partition, args)
            rows.append({'J': J, 'primal': estimate_result(primal), 'dual': estimate_result(dual)})
            logger.info("J=%g: primal chi2 %.4g, dual chi2 %.4g", J,
                        primal.empirical_chi_square, dual.empirical_chi_square)
        return CommandResult(True, "sweep",
                             build_report('sweep', info, partition, rows, dual_partition))

    def cmd_gen(self, args: Namespace) -> CommandResult:
        model, info = self.load_model(args)
        header = [f"{info['topology']} coupling {args.coupling}",
                  f"vertices {info['vertices']} edges {info['edges']}"]
        text = render_edge_list(model.graph, model.couplings, header)
        if args.output is not None:
            Path(args.output).write_text(text, encoding='utf-8')
            self.console.print(f"[success]wrote {info['edges']} edges to {escape(str(args.output))}[/success]",
                               soft_wrap=True)
        else:
            self.stdout.write(text)
            self.stdout.flush()
        return CommandResult(True, "gen")

    def dispatch(self, args: Namespace) -> CommandResult:
        handlers: Dict[str, Callable[[Namespace], CommandResult]] = {
            'exact': self.cmd_exact,
            'primal': self.cmd_primal,
            'dual': self.cmd_dual,
            'compare': self.cmd_compare,
            'sweep': self.cmd_sweep,
            'gen': self.cmd_gen,
        }
        result = handlers[args.command](args)
        if result.data is not None:
            self.emit(result.data, args.format)
        return result


def parse_values(text: str) -> List[float]:
    values = []
    for part in text.split(','):
        part = part.strip()
        if not part:
            continue
        try:
            values.append(float(part))
        except ValueError:
            raise UsageError(f"--values: {part!r} is not a number") from None
    if not values:
        raise UsageError("--values needs at least one coupling")
    return values
