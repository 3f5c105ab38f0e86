"""Special-fiber trees of the birationally ruled surface.

Each non-root component E carries a multiplicity flag (1 reduced, 2
nonreduced) and the arithmetic genus p_E of the preimage of the subtree it
generates.  From these we derive m, theta, gamma and their differences.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from .symkernel import MPoly, as_poly, to_fraction

ROOT = None
MODES = ("trigonal", "hyperelliptic")


class TreeError(ValueError):
    pass


@dataclass(frozen=True)
class TreeComponent:
    id: str
    parent: Optional[str]
    multiplicity: int = 1
    p: MPoly = field(default_factory=MPoly)

    def __post_init__(self):
        if self.multiplicity not in (1, 2):
            raise TreeError(f"component {self.id}: multiplicity must be 1 or 2")
        object.__setattr__(self, "p", as_poly(self.p))


@dataclass(frozen=True)
class Functions:
    m: MPoly
    theta: MPoly
    Theta: MPoly
    gamma: MPoly
    Gamma: MPoly


class TreeFiber:
    def __init__(self, components: List[TreeComponent]):
        self.components = list(components)
        self.by_id: Dict[str, TreeComponent] = {}
        for comp in self.components:
            if comp.id in self.by_id:
                raise TreeError(f"duplicate component id {comp.id!r}")
            self.by_id[comp.id] = comp
        roots = [c.id for c in self.components if c.parent is ROOT]
        if len(roots) != 1:
            raise TreeError(f"a fiber tree needs exactly one root, found {len(roots)}")
        self.root = roots[0]
        if self.by_id[self.root].multiplicity != 1:
            raise TreeError("the root component must be reduced")
        self.children: Dict[str, List[str]] = {c.id: [] for c in self.components}
        for comp in self.components:
            if comp.parent is not ROOT:
                if comp.parent not in self.by_id:
                    raise TreeError(f"component {comp.id}: unknown parent {comp.parent!r}")
                self.children[comp.parent].append(comp.id)
        # every component must reach the root
        for comp in self.components:
            seen = set()
            cur = comp.id
            while cur is not ROOT:
                if cur in seen:
                    raise TreeError("parent links contain a cycle")
                seen.add(cur)
                cur = self.by_id[cur].parent

    def __len__(self):
        return len(self.components)

    def nonroot(self) -> List[str]:
        return [c.id for c in self.components if c.id != self.root]

    def parent(self, cid):
        return self.by_id[cid].parent

    def path(self, cid) -> List[str]:
        """Components from the root (exclusive) down to cid (inclusive)."""
        out = []
        cur = cid
        while cur != self.root:
            out.append(cur)
            cur = self.parent(cur)
        return out[::-1]

    def reduced(self, cid) -> bool:
        return self.by_id[cid].multiplicity == 1

    def m(self, cid) -> int:
        if cid == self.root:
            return 0
        if self.reduced(cid) and self.reduced(self.parent(cid)):
            return 1
        return 2

    def theta(self, cid) -> int:
        # nonreduced components on the root path are skipped, except cid itself
        return sum(1 for e in self.path(cid) if e == cid or self.reduced(e))

    def intersection(self, a, b) -> int:
        """E.E' on the surface, with E.E^- = m_E and T.E = 0."""
        if a not in self.by_id or b not in self.by_id:
            raise TreeError(f"unknown component in pairing ({a!r}, {b!r})")
        if a == b:
            return -(self.m(a) + sum(self.m(ch) for ch in self.children[a]))
        if self.parent(a) == b:
            return self.m(a)
        if self.parent(b) == a:
            return self.m(b)
        return 0

    def ordered_ids(self):
        """Preorder ids, root first; deterministic."""
        out = []
        stack = [self.root]
        while stack:
            cur = stack.pop()
            out.append(cur)
            stack.extend(reversed(self.children[cur]))
        return out


def derive_functions(t: TreeFiber, mode: str = "trigonal") -> Dict[str, Functions]:
    """m, theta, Theta, gamma, Gamma for every component.

    Gamma is obtained by inverting the genus formula for the mode; gamma is
    the running sum of Gamma down from the root.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "hyperelliptic":
        bad = [c.id for c in t.components if c.multiplicity != 1]
        if bad:
            raise TreeError(f"hyperelliptic trees must be reduced; nonreduced: {bad}")
    zero = MPoly()
    out = {t.root: Functions(zero, zero, zero, zero, zero)}
    for cid in t.ordered_ids():
        if cid == t.root:
            continue
        comp = t.by_id[cid]
        par = out[comp.parent]
        m = t.m(cid)
        theta = t.theta(cid)
        Theta = MPoly.const(theta) - par.theta
        if mode == "trigonal":
            Gamma = -(comp.p - 1) / m - Fraction(3, 2) * (Theta + 1)
        else:
            Gamma = -comp.p / m - Theta
        out[cid] = Functions(MPoly.const(m), MPoly.const(theta), Theta, par.gamma + Gamma, Gamma)
    if mode == "trigonal":
        _check_case_table(t, out)
    return out


def _check_case_table(t, funcs):
    for cid in t.nonroot():
        comp = t.by_id[cid]
        f = funcs[cid]
        par_reduced = t.reduced(comp.parent)
        if comp.multiplicity == 1 and par_reduced:
            expect = (1, 1, -(comp.p + 2))
        elif comp.multiplicity == 2 and par_reduced:
            expect = (2, 1, -(comp.p + 5) / 2)
        elif comp.multiplicity == 1:
            expect = (2, 0, -(comp.p + 2) / 2)
        else:
            continue  # two nonreduced in a row: literal rule only
        got = (f.m, f.Theta, f.Gamma)
        if tuple(as_poly(x) for x in expect) != got:
            raise TreeError(f"component {cid}: case table mismatch {got} vs {expect}")


def lemma_genus(m, Theta, Gamma, mode="trigonal") -> MPoly:
    m, Theta, Gamma = as_poly(m), as_poly(Theta), as_poly(Gamma)
    if mode == "trigonal":
        return -m * (Gamma + Fraction(3, 2) * (Theta + 1)) + 1
    return -m * (Gamma + Theta)


def genus_of_subtree(t: TreeFiber, cid: str, mode: str = "trigonal") -> MPoly:
    if cid == t.root:
        raise TreeError("genus of the root subtree is not defined here")
    f = derive_functions(t, mode)[cid]
    return lemma_genus(f.m, f.Theta, f.Gamma, mode)


def difference(t: TreeFiber, vals, cid) -> MPoly:
    par = t.parent(cid)
    return as_poly(vals.get(cid, 0)) - as_poly(vals.get(par, 0))


def tree_product(t: TreeFiber, fvals, hvals) -> MPoly:
    """(sum f_E E).(sum h_E E), checked against -sum m_E F_E H_E."""
    for vals in (fvals, hvals):
        if as_poly(vals.get(t.root, 0)):
            raise TreeError("functions must vanish on the root")
    ids = t.ordered_ids()
    expansion = MPoly()
    for a in ids:
        fa = as_poly(fvals.get(a, 0))
        if not fa:
            continue
        for b in ids:
            hb = as_poly(hvals.get(b, 0))
            if hb:
                expansion = expansion + fa * hb * t.intersection(a, b)
    closed = MPoly()
    for cid in t.nonroot():
        closed = closed - t.m(cid) * difference(t, fvals, cid) * difference(t, hvals, cid)
    if expansion != closed:
        raise AssertionError(f"tree product mismatch: {expansion} != {closed}")
    return closed


def parse_tree_file(text: str):
    """Parse the line format; returns (TreeFiber, header dict)."""
    header = {"genus": None, "mu": 0, "ram1": 0, "ram2": 0, "alpha": []}
    comps = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key = parts[0]
        try:
            if key in ("genus", "mu", "ram1", "ram2"):
                if len(parts) != 2:
                    raise ValueError("expected one value")
                header[key] = int(parts[1])
                continue
            if key == "alpha":
                if len(parts) != 4:
                    raise ValueError("expected: alpha K I N")
                header["alpha"].append((int(parts[1]), int(parts[2]), int(parts[3])))
                continue
            if len(parts) != 3:
                raise ValueError("expected: id parent(mult) p")
            cid, par, p = parts
            mult = 1
            if "(" in par:
                if not par.endswith(")"):
                    raise ValueError(f"bad parent field {par!r}")
                par, mult_s = par[:-1].split("(", 1)
                mult = int(mult_s)
            comps.append(TreeComponent(cid, ROOT if par == "-" else par, mult, MPoly.const(to_fraction(p))))
        except (ValueError, TreeError) as exc:
            raise TreeError(f"line {lineno}: {exc}") from None
    if header["genus"] is None:
        raise TreeError("missing 'genus' header")
    return TreeFiber(comps), header
