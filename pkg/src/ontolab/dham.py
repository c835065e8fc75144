"""Integer-valued Hamiltonians with exact contour dynamics.

H(Q, P) = T(P) + V(Q) + A(Q) B(P) takes integer values on the integer
lattice and is extended between lattice points by piecewise-bilinear
interpolation. One time step moves the system to the next lattice site on
its interpolated constant-energy contour, in the continuum orientation
(dq/dt = dH/dp, dp/dt = -dH/dq). Single-point contours are rest points and
two-point contours flip-flop. The tracer follows the contour cell by cell
in exact rational arithmetic, so energy conservation and reversibility are
integer-exact.

Convention at interpolation saddles (contour self-crossings between lattice
sites): no tested system produces one; the tracer refuses rather than
guessing, and the refusal is documented behaviour.
"""

from fractions import Fraction

import numpy as np

from .errors import WindowTooSmall

_MAX_CELLS = 200000


class PairSystem:
    """One (Q, P) pair with H = T(P) + V(Q) + A(Q) B(P), integers on integers."""

    def __init__(self, T, V, A=None, B=None, name="pair"):
        self.T, self.V, self.A, self.B = T, V, A, B
        self.name = name
        self._cache = {}

    def h(self, Q, P):
        val = self.T(P) + self.V(Q)
        if self.A is not None:
            val += self.A(Q) * self.B(P)
        return int(val)


class GenericPairSystem:
    """Arbitrary integer-valued h(Q, P), e.g. one pair of a frozen multi-pair system."""

    def __init__(self, h, name="generic"):
        self._h = h
        self.name = name
        self._cache = {}

    def h(self, Q, P):
        return int(self._h(Q, P))


def discrete_oscillator():
    """T = P(P-1)/2, V = Q(Q-1)/2: the discretised harmonic oscillator."""
    return PairSystem(lambda P: P * (P - 1) // 2, lambda Q: Q * (Q - 1) // 2,
                      name="osc")


def _corner_coeffs(h, E, cx, cy):
    """Bilinear coefficients (a, b, c, d) of g = H - E on the cell at (cx, cy)."""
    g00 = h(cx, cy) - E
    g10 = h(cx + 1, cy) - E
    g01 = h(cx, cy + 1) - E
    g11 = h(cx + 1, cy + 1) - E
    return g00, g10 - g00, g01 - g00, g11 - g10 - g01 + g00


def _edge_candidates(a, b, c, d):
    """Zero crossings of g on the four cell edges, exact local coordinates."""
    cand = []

    def lin_zeros(p0, slope):
        if slope == 0:
            # g constant on the edge: the whole edge is on the contour iff 0
            return [Fraction(0), Fraction(1)] if p0 == 0 else []
        u = Fraction(-p0, slope)
        return [u] if 0 <= u <= 1 else []

    for u in lin_zeros(a, b):
        cand.append((u, Fraction(0)))          # bottom edge y = 0
    for u in lin_zeros(a + c, b + d):
        cand.append((u, Fraction(1)))          # top edge y = 1
    for u in lin_zeros(a, c):
        cand.append((Fraction(0), u))          # left edge x = 0
    for u in lin_zeros(a + b, c + d):
        cand.append((Fraction(1), u))          # right edge x = 1
    out = []
    for p in cand:
        if p not in out:
            out.append(p)
    return out


def _march(h, E, cell, entry, direction, window):
    """Follow the contour from an entry point to the next lattice site.

    cell: (cx, cy) lower-left corner; entry: exact local (x, y) on the cell
    boundary. Returns the site (Q, P). Raises WindowTooSmall if the contour
    leaves |Q|, |P| <= window or the tracer meets a degenerate saddle.
    """
    cx, cy = cell
    x0, y0 = Fraction(entry[0]), Fraction(entry[1])
    for _ in range(_MAX_CELLS):
        if max(abs(cx), abs(cy)) > window:
            raise WindowTooSmall("contour left the search window |.| <= %d" % window)
        a, b, c, d = _corner_coeffs(h, E, cx, cy)
        fx = direction * (c + d * x0)           # dq/dt = dH/dp
        fy = -direction * (b + d * y0)          # dp/dt = -dH/dq
        if fx == 0 and fy == 0:
            raise WindowTooSmall("degenerate interpolation saddle on the contour")
        best = None
        for (px, py) in _edge_candidates(a, b, c, d):
            if (px, py) == (x0, y0):
                continue
            if (fx > 0 and px <= x0) or (fx < 0 and px >= x0) or (fx == 0 and px != x0):
                continue
            if (fy > 0 and py <= y0) or (fy < 0 and py >= y0) or (fy == 0 and py != y0):
                continue
            if d != 0:
                # stay on the same hyperbola branch: c+dx and b+dy keep signs
                if (c + d * x0) * (c + d * px) < 0 or (b + d * y0) * (b + d * py) < 0:
                    continue
            # the branch is monotone: the exit is the nearest valid crossing
            if best is None or (abs(px - x0) + abs(py - y0)
                                < abs(best[0] - x0) + abs(best[1] - y0)):
                best = (px, py)
        if best is None:
            raise WindowTooSmall("contour tracing found no exit (degenerate cell)")
        px, py = best
        if px.denominator == 1 and py.denominator == 1:
            return int(cx + px), int(cy + py)
        if px == 0:
            cx, x0, y0 = cx - 1, Fraction(1), py
        elif px == 1:
            cx, x0, y0 = cx + 1, Fraction(0), py
        elif py == 0:
            cy, x0, y0 = cy - 1, px, Fraction(1)
        elif py == 1:
            cy, x0, y0 = cy + 1, px, Fraction(0)
        else:
            raise AssertionError("exit point is not on an edge")
    raise WindowTooSmall("contour tracing exceeded the cell budget")


def _outgoing_rays(h, E, site, direction):
    """Cells into which the contour leaves the given lattice site.

    Returns a list of (cell, corner_local, angle); empty for a rest point.
    """
    Q, P = site
    rays = []
    seen_dirs = []
    for cx, cy in ((Q - 1, P - 1), (Q - 1, P), (Q, P - 1), (Q, P)):
        lx, ly = Q - cx, P - cy
        a, b, c, d = _corner_coeffs(h, E, cx, cy)
        fx = direction * (c + d * lx)
        fy = -direction * (b + d * ly)
        if fx == 0 and fy == 0:
            continue
        if (lx == 0 and fx < 0) or (lx == 1 and fx > 0):
            continue
        if (ly == 0 and fy < 0) or (ly == 1 and fy > 0):
            continue
        ang = float(np.arctan2(float(fy), float(fx)))
        if any(abs(ang - a0) < 1e-12 for a0 in seen_dirs):
            continue  # ray along a shared edge already found from the twin cell
        seen_dirs.append(ang)
        rays.append(((cx, cy), (lx, ly), ang))
    return rays


def step_pair(system, state, direction=1, window=256):
    """Advance one (Q, P) pair one time step along its contour.

    Returns the next lattice site; a site alone on its contour is a rest
    point and maps to itself (reported, not raised). Results are cached on
    the system, so long orbits cost one trace per distinct site.
    """
    Q, P = int(state[0]), int(state[1])
    key = (Q, P, direction)
    hit = system._cache.get(key)
    if hit is not None:
        return hit
    E = system.h(Q, P)
    rays = _outgoing_rays(system.h, E, (Q, P), direction)
    if not rays:
        nxt = (Q, P)  # rest point: single-point contour
    else:
        # regular sites have exactly one outgoing ray; if a saddle ever
        # offers several, take the smallest angle for determinism
        rays.sort(key=lambda r: r[2])
        cell, corner, _ = rays[0]
        nxt = _march(system.h, E, cell, corner, direction, window)
    system._cache[key] = nxt
    system._cache[(nxt[0], nxt[1], -direction)] = (Q, P)
    return nxt


def is_rest_point(system, state):
    """True iff the site is alone on its contour."""
    return step_pair(system, state) == (int(state[0]), int(state[1]))


def contour_points(system, E, window=32, trace_window=None):
    """Oriented cycles of lattice sites with H = E inside the window.

    Sites are grouped by following the dynamics; each cycle is listed in the
    continuum orientation starting from its lexicographically smallest site.
    Rest points come out as one-element cycles.
    """
    if trace_window is None:
        trace_window = 2 * window + 16
    sites = [(q, p)
             for q in range(-window, window + 1)
             for p in range(-window, window + 1)
             if system.h(q, p) == E]
    cycles = []
    visited = set()
    for start in sorted(sites):
        if start in visited:
            continue
        cyc = [start]
        visited.add(start)
        cur = step_pair(system, start, 1, trace_window)
        while cur != start:
            if cur in visited:
                raise WindowTooSmall("orbit merged without closing; saddle rule hit")
            cyc.append(cur)
            visited.add(cur)
            cur = step_pair(system, cur, 1, trace_window)
        cycles.append(cyc)
    return cycles


def _segment_length(a, b, c, d, p0, p1, samples=16):
    """Arc length of the contour piece between two cell-boundary points.

    The branch is an explicit graph y(x) = -(a+bx)/(c+dx) (or x(y)), so the
    piece is sampled and summed as a fine polyline.
    """
    x0, y0 = float(p0[0]), float(p0[1])
    x1, y1 = float(p1[0]), float(p1[1])
    if abs(x1 - x0) >= abs(y1 - y0):
        xs = np.linspace(x0, x1, samples + 1)
        den = c + d * xs
        if np.any(np.abs(den) < 1e-12):
            return float(np.hypot(x1 - x0, y1 - y0))
        ys = -(a + b * xs) / den
        ys[0], ys[-1] = y0, y1
    else:
        ys = np.linspace(y0, y1, samples + 1)
        den = b + d * ys
        if np.any(np.abs(den) < 1e-12):
            return float(np.hypot(x1 - x0, y1 - y0))
        xs = -(a + c * ys) / den
        xs[0], xs[-1] = x0, x1
    return float(np.sum(np.hypot(np.diff(xs), np.diff(ys))))


def _edge_crossings(h, E, window):
    """All exact contour crossing points on lattice edges, plus on-contour sites.

    Returns a set of global (Fraction, Fraction) points.
    """
    pts = set()
    vals = {}
    for x in range(-window, window + 1):
        for y in range(-window, window + 1):
            vals[(x, y)] = h(x, y) - E
    for (x, y), g1 in vals.items():
        if g1 == 0:
            pts.add((Fraction(x), Fraction(y)))
        for dx, dy in ((1, 0), (0, 1)):
            g2 = vals.get((x + dx, y + dy))
            if g2 is None:
                continue
            if (g1 > 0 > g2) or (g1 < 0 < g2):
                u = Fraction(-g1, g2 - g1)
                pts.add((Fraction(x) + u * dx, Fraction(y) + u * dy))
    return pts


def _entry_cell(h, E, point, direction):
    """Cell the flow enters at a boundary crossing, with local coordinates."""
    x, y = point
    if x.denominator == 1 and y.denominator == 1:
        rays = _outgoing_rays(h, E, (int(x), int(y)), direction)
        if not rays:
            return None
        rays.sort(key=lambda r: r[2])
        cell, corner, _ = rays[0]
        return cell, (Fraction(corner[0]), Fraction(corner[1]))
    if y.denominator == 1:
        cx = int(np.floor(float(x)))
        for cy in (int(y), int(y) - 1):
            lx, ly = x - cx, y - cy
            if not 0 <= ly <= 1:
                continue
            a, b, c, d = _corner_coeffs(h, E, cx, cy)
            fy = -direction * (b + d * ly)
            if (ly == 0 and fy > 0) or (ly == 1 and fy < 0):
                return (cx, cy), (lx, ly)
        return None
    cy = int(np.floor(float(y)))
    for cx in (int(x), int(x) - 1):
        lx, ly = x - cx, y - cy
        if not 0 <= lx <= 1:
            continue
        a, b, c, d = _corner_coeffs(h, E, cx, cy)
        fx = direction * (c + d * lx)
        if (lx == 0 and fx > 0) or (lx == 1 and fx < 0):
            return (cx, cy), (lx, ly)
    return None


def contour_length(system, E, window=64):
    """Total arc length of the H = E level set of the interpolation.

    Traces every closed component inside the window, whether or not it
    carries lattice sites; site-free contours are exactly the ones that make
    the site-counting statistics come out right. Raises WindowTooSmall if a
    component leaves the window.
    """
    crossings = _edge_crossings(system.h, E, window)
    unvisited = set(crossings)
    total = 0.0
    components = 0
    while unvisited:
        start = unvisited.pop()
        entry = _entry_cell(system.h, E, start, 1)
        if entry is None:
            continue  # isolated on-contour site: point component, length 0
        components += 1
        (cx, cy), (x0, y0) = entry
        for _ in range(_MAX_CELLS):
            if max(abs(cx), abs(cy)) > window:
                raise WindowTooSmall("contour left the window |.| <= %d" % window)
            a, b, c, d = _corner_coeffs(system.h, E, cx, cy)
            fx = 1 * (c + d * x0)
            fy = -1 * (b + d * y0)
            if fx == 0 and fy == 0:
                raise WindowTooSmall("degenerate interpolation saddle")
            best = None
            for (px, py) in _edge_candidates(a, b, c, d):
                if (px, py) == (x0, y0):
                    continue
                if (fx > 0 and px <= x0) or (fx < 0 and px >= x0) or \
                        (fx == 0 and px != x0):
                    continue
                if (fy > 0 and py <= y0) or (fy < 0 and py >= y0) or \
                        (fy == 0 and py != y0):
                    continue
                if d != 0:
                    if (c + d * x0) * (c + d * px) < 0 or \
                            (b + d * y0) * (b + d * py) < 0:
                        continue
                if best is None or (abs(px - x0) + abs(py - y0)
                                    < abs(best[0] - x0) + abs(best[1] - y0)):
                    best = (px, py)
            if best is None:
                raise WindowTooSmall("no exit while measuring the contour")
            px, py = best
            total += _segment_length(a, b, c, d, (x0, y0), (px, py))
            gpt = (Fraction(cx) + px, Fraction(cy) + py)
            unvisited.discard(gpt)
            if gpt == start:
                break
            if px.denominator == 1 and py.denominator == 1:
                entry = _entry_cell(system.h, E, gpt, 1)
                if entry is None:
                    raise WindowTooSmall("contour ran into a dead corner")
                (cx, cy), (x0, y0) = entry
            elif px == 0:
                cx, x0, y0 = cx - 1, Fraction(1), py
            elif px == 1:
                cx, x0, y0 = cx + 1, Fraction(0), py
            elif py == 0:
                cy, x0, y0 = cy - 1, px, Fraction(1)
            else:
                cy, x0, y0 = cy + 1, px, Fraction(0)
        else:
            raise WindowTooSmall("contour measuring exceeded the cell budget")
    return total, components


def gradient_norm(system, site):
    """|grad H| of the interpolation at a site, via central differences."""
    Q, P = site
    gq = 0.5 * (system.h(Q + 1, P) - system.h(Q - 1, P))
    gp = 0.5 * (system.h(Q, P + 1) - system.h(Q, P - 1))
    return float(np.hypot(gq, gp))


def speed_statistics(system, E, band=None, window=64):
    """Mean update speed over an energy shell against the Hamilton speed.

    One update moves the system to the next lattice site on its contour, so
    the mean distance travelled per step is (total contour length)/(number
    of sites), pooled over the shell |H - E| <= band. Site-free contours
    contribute length but no visits and must be included. The statement
    that this matches |grad H| is statistical: individual contours scatter
    widely with the arithmetic of the level values. band defaults to 25%
    of E.
    """
    if band is None:
        band = max(1, round(0.25 * E))
    total_length = 0.0
    total_sites = 0
    total_grad = 0.0
    contours = 0
    for level in range(E - band, E + band + 1):
        length, comps = contour_length(system, level, window=window)
        total_length += length
        contours += comps
        for q in range(-window, window + 1):
            for p in range(-window, window + 1):
                if system.h(q, p) == level:
                    total_sites += 1
                    total_grad += gradient_norm(system, (q, p))
    if total_sites == 0:
        return {"ratio": float("nan"), "contours": contours, "sites": 0,
                "mean_lattice_speed": float("nan"),
                "mean_continuum_speed": float("nan")}
    mean_disp = total_length / total_sites
    mean_grad = total_grad / total_sites
    return {"ratio": mean_disp / mean_grad, "contours": contours,
            "sites": total_sites, "mean_lattice_speed": mean_disp,
            "mean_continuum_speed": mean_grad}


def cycle_update(h_joint, Qs, Ps, direction=1, window=256, order=None):
    """Sequential per-pair update of a multi-pair integer Hamiltonian.

    h_joint(Qs, Ps) -> integer. Pairs are updated one at a time with the
    others frozen (each sub-step conserves the full H exactly); the inverse
    is the reversed order of inverse sub-steps, applied automatically for
    direction = -1.
    """
    Qs, Ps = list(Qs), list(Ps)
    n = len(Qs)
    if order is None:
        order = list(range(n))
    if direction < 0:
        order = list(reversed(order))
    for i in order:
        def h_i(q, p, _i=i):
            qs = Qs.copy()
            ps = Ps.copy()
            qs[_i], ps[_i] = q, p
            return h_joint(qs, ps)

        sub = GenericPairSystem(h_i)
        Qs[i], Ps[i] = step_pair(sub, (Qs[i], Ps[i]), direction, window)
    return Qs, Ps


def field_update(local_h, Qs, Ps, direction=1, window=256, even_order=None,
                 odd_order=None):
    """Even sweep then odd sweep on a ring with nearest-neighbour coupling.

    local_h(x, q, p, q_left, q_right) -> integer effective Hamiltonian of
    the pair at site x given its neighbours' frozen coordinates. Because an
    even site's neighbours are odd, the order inside each sweep is
    immaterial (exposed for the permutation test). direction = -1 applies
    the exact inverse (odd sweep first, inverse sub-steps).
    """
    Qs, Ps = list(Qs), list(Ps)
    n = len(Qs)
    if n % 2:
        raise ValueError("ring size must be even")
    evens = list(range(0, n, 2)) if even_order is None else list(even_order)
    odds = list(range(1, n, 2)) if odd_order is None else list(odd_order)

    def sweep(idxs):
        for x in idxs:
            def h_x(q, p, _x=x):
                return local_h(_x, q, p, Qs[(_x - 1) % n], Qs[(_x + 1) % n])

            sub = GenericPairSystem(h_x)
            Qs[x], Ps[x] = step_pair(sub, (Qs[x], Ps[x]), direction, window)

    if direction >= 0:
        sweep(evens)
        sweep(odds)
    else:
        sweep(odds)
        sweep(evens)
    return Qs, Ps


def integer_oscillator_step(Tmat, Vmat, Q, Pminus):
    """One step of the integer multi-dimensional oscillator.

    P(t+1/2) = P(t-1/2) - V Q(t), then Q(t+1) = Q(t) + T P(t+1/2); exact in
    integer arithmetic (object arrays welcome for big integers).
    """
    T = np.asarray(Tmat)
    V = np.asarray(Vmat)
    Q = np.asarray(Q)
    P1 = Pminus - V @ Q
    Q1 = Q + T @ P1
    return Q1, P1


def oscillator_energy(Tmat, Vmat, Q, Pplus):
    """Exactly conserved energy of the integer oscillator, as a Fraction.

    Evaluated on (Q(t), P(t+1/2)):
    H = P+ (T/2 - T V T / 8) P+ + (1/2) (Q + P+ T/2) V (Q + T P+ / 2).
    """
    T = [[Fraction(int(v)) for v in row] for row in np.asarray(Tmat)]
    V = [[Fraction(int(v)) for v in row] for row in np.asarray(Vmat)]
    q = [Fraction(int(v)) for v in np.asarray(Q)]
    p = [Fraction(int(v)) for v in np.asarray(Pplus)]
    n = len(q)

    def matvec(M, v):
        return [sum(M[i][j] * v[j] for j in range(n)) for i in range(n)]

    def dot(u, v):
        return sum(a * b for a, b in zip(u, v))

    Tp = matvec(T, p)
    VTp = matvec(V, Tp)
    TVTp = matvec(T, VTp)
    kinetic = dot(p, Tp) / 2 - dot(p, TVTp) / 8
    shifted = [q[i] + Tp[i] / 2 for i in range(n)]
    potential = dot(shifted, matvec(V, shifted)) / 2
    return kinetic + potential


def stability_predicate(Tmat, Vmat, tol=1e-9):
    """Boundedness test: T > 0, V > 0, 4 V^-1 - T >= 0 and 4 T^-1 - V >= 0."""
    T = np.asarray(Tmat, dtype=float)
    V = np.asarray(Vmat, dtype=float)
    if np.min(np.linalg.eigvalsh(T)) <= tol or np.min(np.linalg.eigvalsh(V)) <= tol:
        return False
    c1 = np.min(np.linalg.eigvalsh(4.0 * np.linalg.inv(V) - T)) >= -tol
    c2 = np.min(np.linalg.eigvalsh(4.0 * np.linalg.inv(T) - V)) >= -tol
    return bool(c1 and c2)
