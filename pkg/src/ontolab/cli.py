"""Experiment runner: named experiments, seeded determinism, CSV/JSON output.

Single binary with one subcommand per library module plus `run`, `list` and
`verify`. Every CSV starts with `#`-prefixed provenance lines (experiment,
version, seed, parameters); floats are printed with 17 significant digits so
re-running a seeded experiment is byte-identical. Exit codes: 0 success,
2 configuration error, 3 numerical-contract violation.
"""

import argparse
import json
import math
import os
import sys
import time
from fractions import Fraction

import numpy as np

from . import __version__, bch, bell, cogwheel, dham, fermi2q, hilbert, lattice2d
from . import neutrino, pq, rotator
from .errors import ContractViolation

EXIT_CONFIG = 2
EXIT_CONTRACT = 3


class ConfigError(Exception):
    pass


def _set_threads(n):
    if n is None:
        n = os.environ.get("ONTOLAB_THREADS")
    if n is None:
        return
    n = str(int(n))
    for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ[var] = n


def _fmt(value):
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, (np.floating,)):
        return format(float(value), ".17g")
    return str(value)


def _write_csv(path, name, seed, params, columns, rows):
    param_str = ";".join(f"{k}={params[k]}" for k in sorted(params))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# experiment={name}\n")
        fh.write(f"# version={__version__}\n")
        fh.write(f"# seed={seed if seed is not None else ''}\n")
        fh.write(f"# params={param_str}\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")
    return path


def _write_json(path, name, seed, params, payload):
    doc = {
        "experiment": name,
        "version": __version__,
        "seed": seed,
        "params": params,
        "result": payload,
    }
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


# ---------------------------------------------------------------- experiments


def _exp_hilbert_omega(params, seed, outdir):
    points = int(params.get("points", 257))
    radii = params.get("R", [1.0, 2.0, 5.0, 10.0])
    if isinstance(radii, str):
        radii = [float(x) for x in radii.split(",")]
    omega = np.linspace(0.0, 2.0 * np.pi, points, endpoint=False)
    rows = []
    for scheme in ("plain-damped", "arcsin-center", "stretched"):
        for R in radii:
            approx = hilbert.omega_approx(omega, R, scheme)
            for w, wa in zip(omega, approx):
                rows.append((w, wa, R, scheme))
    path = os.path.join(outdir, "hilbert_omega.csv")
    return [
        _write_csv(
            path,
            "hilbert.omega",
            seed,
            {"points": points, "R": ",".join(str(r) for r in radii)},
            ("omega", "omega_approx", "R", "scheme"),
            rows,
        )
    ]


def _parse_cycles(text):
    cycles = []
    for part in str(text).split(","):
        if ":" in part:
            n, delta = part.split(":")
            cycles.append((int(n), float(delta)))
        else:
            cycles.append((int(part), 0.0))
    return cycles


def _exp_cogwheel_spectrum(params, seed, outdir):
    cycles = _parse_cycles(params.get("cycles", "3:0.0,5:0.4,7:1.1"))
    rows = []
    level = 0
    for idx, (n, delta) in enumerate(cycles):
        for k in range(n):
            rows.append((level, 2.0 * np.pi * k / n + delta, idx))
            level += 1
    rows.sort(key=lambda r: (r[1], r[0]))
    rows = [(i, e, c) for i, (_, e, c) in enumerate(rows)]
    path = os.path.join(outdir, "cogwheel_spectrum.csv")
    return [
        _write_csv(
            path,
            "cogwheel.spectrum",
            seed,
            {"cycles": ",".join(f"{n}:{d}" for n, d in cycles)},
            ("level_index", "energy", "cycle"),
            rows,
        )
    ]


def _exp_rotator_matrices(params, seed, outdir):
    ell = Fraction(str(params.get("ell", 10)))
    rp = rotator.RotatorParams(ell)
    W = rotator.x_frame_transform(rp)
    sigma = rotator.sigma_operator(rp)
    vals, vecs = np.linalg.eigh(sigma)
    overlap = np.abs(W.conj().T @ vecs) ** 2
    rows = []
    for m1 in range(rp.N):
        for k in range(rp.N):
            rows.append((m1, int(round(vals[k])), overlap[m1, k]))
    path = os.path.join(outdir, "rotator_matrices.csv")
    return [
        _write_csv(
            path,
            "rotator.matrices",
            seed,
            {"ell": str(ell)},
            ("m1", "k", "weight"),
            rows,
        )
    ]


def _exp_pq_wavelet(params, seed, outdir):
    grid = int(params.get("grid", 1601))
    qrange = float(params.get("range", 8))
    Q = int(params.get("Q", 0))
    P = int(params.get("P", 0))
    q = np.linspace(-qrange, qrange, grid)
    psi = pq.wavefunction(q, Q, P)
    rows = [(qi, v.real, v.imag, abs(v)) for qi, v in zip(q, psi)]
    path = os.path.join(outdir, "pq_wavelet.csv")
    return [
        _write_csv(
            path,
            "pq.wavelet",
            seed,
            {"grid": grid, "range": qrange, "Q": Q, "P": P},
            ("q", "re", "im", "abs"),
            rows,
        )
    ]


def _exp_pq_edge(params, seed, outdir):
    windows = params.get("windows", [21, 41])
    if isinstance(windows, str):
        windows = [int(x) for x in windows.split(",")]
    block = int(params.get("block", 9))
    rows = []
    for size in windows:
        window = pq.PQLatticeWindow(size)
        rows.append((size, pq.edge_defect(window, block // 2)))
    path = os.path.join(outdir, "pq_edge.csv")
    return [
        _write_csv(
            path,
            "pq.edge",
            seed,
            {"windows": ",".join(str(w) for w in windows), "block": block},
            ("window", "central_defect"),
            rows,
        )
    ]


def _exp_bell_chsh(params, seed, outdir):
    angles = params.get("angles", "22.5,-22.5,0,45")
    if isinstance(angles, str):
        angles = [float(x) for x in angles.split(",")]
    n = int(params.get("n", 1000000))
    settings = bell.Settings(*[math.radians(a) for a in angles])
    s_quad = bell.chsh(settings)
    if seed is None:
        raise ConfigError("bell.chsh is stochastic; a seed is required")
    s_mc, stderr = bell.chsh_montecarlo(settings, n, seed)
    path = os.path.join(outdir, "bell_chsh.json")
    return [
        _write_json(
            path,
            "bell.chsh",
            seed,
            {"angles": ",".join(str(a) for a in angles), "n": n},
            {"S_quadrature": s_quad, "S_montecarlo": s_mc, "stderr": stderr},
        )
    ]


def _exp_bell_mousedrop(params, seed, outdir):
    angles = params.get("angles", "22.5,-22.5,0,45")
    if isinstance(angles, str):
        angles = [float(x) for x in angles.split(",")]
    grid = int(params.get("grid", 721))
    a, b = math.radians(angles[0]), math.radians(angles[1])
    c = np.linspace(0.0, 2.0 * np.pi, grid)
    w = bell.w_conditional(c, a, b)
    rows = list(zip(c, w))
    path = os.path.join(outdir, "bell_mousedrop.csv")
    return [
        _write_csv(
            path,
            "bell.mousedrop",
            seed,
            {"a_deg": angles[0], "b_deg": angles[1], "grid": grid},
            ("c", "w"),
            rows,
        )
    ]


def _exp_lattice2d_run(params, seed, outdir):
    L = int(params.get("L", 64))
    steps = int(params.get("steps", 256))
    if seed is None:
        raise ConfigError("lattice2d.run needs a seed for the initial state")
    state = lattice2d.random_state(L, seed)
    rows = []
    for t in range(steps + 1):
        movers = lattice2d.movers(state)
        energy = lattice2d.classical_energy(state)
        for x in range(L):
            rows.append(
                (
                    t,
                    x,
                    int(state.Q[x]),
                    int(state.Pplus[x]),
                    int(movers.AL[x]),
                    int(movers.AR[x]),
                    str(energy),
                )
            )
        if t < steps:
            state = lattice2d.step(state)
    path = os.path.join(outdir, "lattice2d_run.csv")
    return [
        _write_csv(
            path,
            "lattice2d.run",
            seed,
            {"L": L, "steps": steps},
            ("t", "x", "Q", "Pplus", "AL", "AR", "energy"),
            rows,
        )
    ]


def _exp_lattice2d_kernel(params, seed, outdir):
    lam = float(params.get("lam", 1e-4))
    smax = int(params.get("range", 16))
    rows = []
    for s in range(smax + 1):
        rows.append(
            (
                s,
                lattice2d.quantum_kernel_closed(s, lam),
                lattice2d.quantum_kernel_quadrature(s, lam),
            )
        )
    path = os.path.join(outdir, "lattice2d_kernel.csv")
    return [
        _write_csv(
            path,
            "lattice2d.kernel",
            seed,
            {"lam": lam, "range": smax},
            ("separation", "closed", "quadrature"),
            rows,
        )
    ]


def _exp_neutrino_correlations(params, seed, outdir):
    dr = float(params.get("dr", 1.0))
    nmax = int(params.get("range", 64))
    rows = []
    for n in range(nmax + 1):
        delta = n * dr
        rows.append(
            (
                delta,
                neutrino.vacuum_pair_correlation(delta, 0.0, dr),
                neutrino.vacuum_pair_correlation_quadrature(delta, 0.0, dr),
            )
        )
    path = os.path.join(outdir, "neutrino_correlations.csv")
    return [
        _write_csv(
            path,
            "neutrino.correlations",
            seed,
            {"dr": dr, "range": nmax},
            ("delta_r", "exact", "quadrature"),
            rows,
        )
    ]


def _exp_dham_orbit(params, seed, outdir):
    name = str(params.get("system", "osc"))
    if name != "osc":
        raise ConfigError(f"unknown system '{name}' (only 'osc' is built in)")
    system = dham.discrete_oscillator()
    E = int(params.get("E", 12))
    steps = int(params.get("steps", 100000))
    state = _oscillator_start(system, E)
    rows = []
    for t in range(steps + 1):
        rows.append((t, state[0], state[1], str(system.h(state[0], state[1]))))
        if t < steps:
            state = dham.step_pair(system, state)
    path = os.path.join(outdir, "dham_orbit.csv")
    return [
        _write_csv(
            path,
            "dham.orbit",
            seed,
            {"system": name, "E": E, "steps": steps},
            ("t", "Q", "P", "H"),
            rows,
        )
    ]


def _oscillator_start(system, E, window=80):
    best = None
    for Q in range(-window, window + 1):
        for P in range(-window, window + 1):
            h = system.h(Q, P)
            if best is None or abs(h - E) < abs(best[0] - E):
                best = (h, (Q, P))
    return best[1]


def _exp_bch_compare(params, seed, outdir):
    dim = int(params.get("sites", 4))
    max_order = int(params.get("order", 3))
    if seed is None:
        raise ConfigError("bch.compare draws random generators; seed required")
    rng = np.random.default_rng(seed)
    table = []
    for norm in (0.2, 0.1, 0.05):
        A = _random_hermitean(rng, dim, norm)
        B = _random_hermitean(rng, dim, norm)
        import scipy.linalg

        exact = scipy.linalg.expm(1j * A) @ scipy.linalg.expm(1j * B)
        entry = {"norm": norm, "errors": {}}
        for order in range(1, max_order + 1):
            R = bch.bch_truncated(1j * A, 1j * B, order)
            err = float(np.linalg.norm(scipy.linalg.expm(R) - exact, 2))
            entry["errors"][str(order)] = err
        table.append(entry)
    path = os.path.join(outdir, "bch_compare.json")
    return [
        _write_json(
            path,
            "bch.compare",
            seed,
            {"sites": dim, "order": max_order},
            table,
        )
    ]


def _random_hermitean(rng, dim, norm):
    X = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    H = 0.5 * (X + X.conj().T)
    return H * (norm / np.linalg.norm(H, 2))


def _exp_fermi2q_spectrum(params, seed, outdir):
    perm = params.get("perm", "2,0,1")
    if isinstance(perm, str):
        perm = [int(x) for x in perm.split(",")]
    recenter = bool(params.get("recenter", False))
    h = fermi2q.permutation_mode_matrix(perm, recenter=recenter)
    spectrum = fermi2q.subset_sum_spectrum(h)
    rows = [(i, e) for i, e in enumerate(spectrum)]
    path = os.path.join(outdir, "fermi2q_spectrum.csv")
    return [
        _write_csv(
            path,
            "fermi2q.spectrum",
            seed,
            {"perm": ",".join(str(p) for p in perm), "recenter": recenter},
            ("level", "energy"),
            rows,
        )
    ]


EXPERIMENTS = {
    "hilbert.omega": (
        "dispersion curves of the Fourier Hamiltonian schemes",
        _exp_hilbert_omega,
    ),
    "cogwheel.spectrum": (
        "composite cogwheel energy levels (level_index, energy, cycle)",
        _exp_cogwheel_spectrum,
    ),
    "rotator.matrices": (
        "x-frame / angle-operator eigenvector overlap weights",
        _exp_rotator_matrices,
    ),
    "pq.wavelet": (
        "integer phase-space wavelet profile on a q grid",
        _exp_pq_wavelet,
    ),
    "pq.edge": (
        "central commutator defect against the edge state, per window",
        _exp_pq_edge,
    ),
    "bell.chsh": (
        "CHSH value by quadrature and by seeded Monte Carlo",
        _exp_bell_chsh,
    ),
    "bell.mousedrop": (
        "conditional hidden-variable density over one period",
        _exp_bell_mousedrop,
    ),
    "lattice2d.run": (
        "integer field automaton time series with movers and energy",
        _exp_lattice2d_run,
    ),
    "lattice2d.kernel": (
        "infrared-damped kernel: closed form vs quadrature",
        _exp_lattice2d_kernel,
    ),
    "neutrino.correlations": (
        "vacuum pair correlations: closed form vs quadrature",
        _exp_neutrino_correlations,
    ),
    "dham.orbit": (
        "discrete Hamiltonian contour orbit (t, Q, P, H)",
        _exp_dham_orbit,
    ),
    "bch.compare": (
        "truncation error of combined exponentials vs order",
        _exp_bch_compare,
    ),
    "fermi2q.spectrum": (
        "Fock spectrum of a permutation mode matrix",
        _exp_fermi2q_spectrum,
    ),
}


def run_experiment(name, params, seed, outdir):
    if name not in EXPERIMENTS:
        raise ConfigError(f"unknown experiment '{name}'")
    os.makedirs(outdir, exist_ok=True)
    return EXPERIMENTS[name][1](params, seed, outdir)


# --------------------------------------------------------------------- verify


def _verify_checks(suite):
    checks = []

    def check(name, fn):
        checks.append((name, fn))

    rng = np.random.default_rng(12345)

    def hilbert_roundtrip():
        X = rng.standard_normal((16, 16)) + 1j * rng.standard_normal((16, 16))
        U, _ = np.linalg.qr(X)
        spec = hilbert.eigenphases(U)
        assert np.max(np.abs(spec.reconstruct() - U)) < 1e-10

    check("hilbert.eigenphase_roundtrip", hilbert_roundtrip)

    def cogwheel_spectra():
        for N in range(2, 17):
            H = cogwheel.hamiltonian_matrix(N)
            vals = np.sort(np.linalg.eigvalsh(H))
            assert np.max(np.abs(vals - 2.0 * np.pi * np.arange(N) / N)) < 1e-10

    check("cogwheel.spectra_2_16", cogwheel_spectra)

    def rotator_comm():
        rp = rotator.RotatorParams(Fraction(11, 2))
        ops = rotator.build_operators(rp)
        comm = ops.x @ ops.p - ops.p @ ops.x
        ell = float(rp.ell)
        expect = 1j * (
            np.eye(rp.N)
            - (2 * ell + 1) * ops.hamiltonian / (2.0 * np.pi * ell)
        )
        assert np.max(np.abs(comm - expect)) < 1e-9

    check("rotator.xp_commutator", rotator_comm)

    def pq_winding():
        kappa = rng.uniform(-3, 3, 20)
        xi = rng.uniform(-3, 3, 20)
        for k, x in zip(kappa, xi):
            base = pq.phase_function(k, x).phi
            shifted = pq.phase_function(k, x + 4 * np.pi).phi
            assert abs(shifted - base - 2 * k) < 1e-10

    check("pq.winding_identity", pq_winding)

    def pq_edge_small():
        assert pq.edge_defect(21, 4) < 0.2

    check("pq.edge_window21", pq_edge_small)

    def bell_quadrature():
        s = bell.chsh(bell.DEFAULT_ANGLES)
        assert abs(s - 2.0 * math.sqrt(2.0)) < 1e-5

    check("bell.chsh_quadrature", bell_quadrature)

    def lattice_conservation():
        steps = 100000 if suite == "full" else 2000
        L = 64 if suite == "full" else 32
        state = lattice2d.random_state(L, 3)
        e0 = lattice2d.classical_energy(state)
        cur = state
        for _ in range(steps):
            cur = lattice2d.step(cur)
        assert lattice2d.classical_energy(cur) == e0
        back = cur
        for _ in range(steps):
            back = lattice2d.step_back(back)
        assert np.array_equal(back.Q, state.Q)
        assert np.array_equal(back.Pplus, state.Pplus)

    check("lattice2d.energy_reversal", lattice_conservation)

    def neutrino_correl():
        for n in range(0, 9):
            exact = neutrino.vacuum_pair_correlation(n * 1.0, 0.0, 1.0)
            quad = neutrino.vacuum_pair_correlation_quadrature(n * 1.0, 0.0, 1.0)
            assert abs(exact - quad) < 1e-10

    check("neutrino.correlations", neutrino_correl)

    def dham_conservation():
        steps = 1000000 if suite == "full" else 20000
        system = dham.discrete_oscillator()
        state = _oscillator_start(system, 12)
        e0 = system.h(*state)
        cur = state
        for _ in range(steps):
            cur = dham.step_pair(system, cur)
        assert system.h(*cur) == e0
        back = cur
        for _ in range(steps):
            back = dham.step_pair(system, back, direction=-1)
        assert back == state

    check("dham.conservation_reversal", dham_conservation)

    def bch_coeffs():
        coeffs = bch.interaction_series_coefficients(3)
        assert [str(c) for c in coeffs] == ["1", "1/24", "7/5760"]

    check("bch.series_coefficients", bch_coeffs)

    def fermi_subset():
        h = _random_hermitean(rng, 5, 1.0)
        HF = fermi2q.second_quantized_h(h)
        dense = np.sort(np.linalg.eigvalsh(HF))
        assert np.max(np.abs(dense - fermi2q.subset_sum_spectrum(h))) < 1e-9

    check("fermi2q.subset_sums", fermi_subset)

    if suite == "full":

        def pq_edge_large():
            defects = [pq.edge_defect(size, 4) for size in (21, 41, 81)]
            assert defects[1] < 0.05
            assert defects[0] > defects[1] > defects[2]

        check("pq.edge_monotone", pq_edge_large)

        def bell_mc():
            s, stderr = bell.chsh_montecarlo(bell.DEFAULT_ANGLES, 1000000, 7)
            assert abs(s - 2.0 * math.sqrt(2.0)) < 0.01

        check("bell.chsh_montecarlo", bell_mc)

    return checks


def run_verify(suite):
    if suite not in ("fast", "full"):
        raise ConfigError("suite must be 'fast' or 'full'")
    report = {"suite": suite, "checks": [], "passed": True}
    for name, fn in _verify_checks(suite):
        t0 = time.perf_counter()
        try:
            fn()
            ok = True
            detail = ""
        except AssertionError as exc:
            ok = False
            detail = str(exc)
        except ContractViolation as exc:
            ok = False
            detail = f"{type(exc).__name__}: {exc}"
        report["checks"].append(
            {
                "name": name,
                "passed": ok,
                "seconds": round(time.perf_counter() - t0, 3),
                "detail": detail,
            }
        )
        if not ok:
            report["passed"] = False
    return report


# ------------------------------------------------------------------- parsing


def _add_common(parser):
    parser.add_argument("--config", help="JSON config file; flags override")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--out", default="out", help="output directory")
    parser.add_argument("--threads", type=int, default=None)


def _build_parser():
    top = argparse.ArgumentParser(
        prog="ontolab", description="deterministic-model numerics experiment runner"
    )
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run an experiment from a JSON config")
    _add_common(p)
    p.add_argument("--experiment", help="experiment name (overrides config)")

    p = sub.add_parser("list", help="list available experiments")

    p = sub.add_parser("verify", help="run the module invariant batteries")
    p.add_argument("--suite", default="fast", choices=("fast", "full"))
    p.add_argument("--threads", type=int, default=None)

    # module subcommands: ontolab <module> <action> [flags]
    specs = {
        ("hilbert", "omega"): ["points", "R"],
        ("cogwheel", "spectrum"): ["cycles"],
        ("rotator", "matrices"): ["ell"],
        ("pq", "wavelet"): ["grid", "range", "Q", "P"],
        ("pq", "edge"): ["windows", "block"],
        ("bell", "chsh"): ["angles", "n"],
        ("bell", "mousedrop"): ["angles", "grid"],
        ("lattice2d", "run"): ["L", "steps"],
        ("lattice2d", "kernel"): ["lam", "range"],
        ("neutrino", "correlations"): ["dr", "range"],
        ("dham", "orbit"): ["system", "E", "steps"],
        ("bch", "compare"): ["sites", "order"],
        ("fermi2q", "spectrum"): ["perm", "recenter"],
    }
    module_parsers = {}
    for (module, action), flags in specs.items():
        if module not in module_parsers:
            mp = sub.add_parser(module, help=f"{module} experiments")
            module_parsers[module] = mp.add_subparsers(
                dest="action", required=True
            )
        ap = module_parsers[module].add_parser(action)
        _add_common(ap)
        for flag in flags:
            if flag == "recenter":
                ap.add_argument("--recenter", action="store_true")
            else:
                ap.add_argument(f"--{flag}")
    return top


def _collect_params(args, experiment):
    params = {}
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config: {exc}")
        known = {"experiment", "params", "seed", "out"}
        unknown = set(doc) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        params.update(doc.get("params", {}))
        if args.seed is None and "seed" in doc:
            args.seed = int(doc["seed"])
        if doc.get("out") and args.out == "out":
            args.out = doc["out"]
        if experiment is None:
            experiment = doc.get("experiment")
    for key, value in vars(args).items():
        if key in ("command", "action", "config", "seed", "out", "threads",
                   "experiment"):
            continue
        if value is not None and value is not False:
            params[key] = value
    return experiment, params


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        _set_threads(getattr(args, "threads", None))
        if args.command == "list":
            for name in sorted(EXPERIMENTS):
                print(f"{name:24s} {EXPERIMENTS[name][0]}")
            return 0
        if args.command == "verify":
            report = run_verify(args.suite)
            print(json.dumps(report, indent=2))
            return 0 if report["passed"] else 1
        if args.command == "run":
            experiment, params = _collect_params(args, args.experiment)
            if not experiment:
                raise ConfigError("no experiment named (flag or config)")
        else:
            experiment = f"{args.command}.{args.action}"
            experiment, params = _collect_params(args, experiment)
        files = run_experiment(experiment, params, args.seed, args.out)
        for f in files:
            print(f)
        return 0
    except (ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ContractViolation as exc:
        print(f"contract violation: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONTRACT


if __name__ == "__main__":
    sys.exit(main())
