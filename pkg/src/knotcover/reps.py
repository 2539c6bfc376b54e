"""Affine representations of knot groups over finite fields.

A generator of abelianization degree e maps to the affine map
z -> alpha^e z + y, with alpha a fixed nonzero root of the Alexander
polynomial mod p living in F_p(alpha) and per-generator translations y.
Such an assignment extends to the group exactly when the translation
vector lies in the kernel of the Fox Jacobian evaluated at alpha; the
image is then the metabelian group <alpha> x| F_(p^d) of order n*p^d.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra.gf import GF
from .algebra.modp import fp_factor, is_prime
from .fox import jacobian
from .presentations import GroupPresentation, Word

AffineMap = tuple[int, tuple]  # (exponent of alpha mod n, translation)


class NoRepresentationError(ValueError):
    """The Alexander polynomial is trivial mod p: no nonzero root exists."""


@dataclass(frozen=True)
class DeltaRoot:
    """One Galois class of nonzero roots of the Alexander polynomial mod p:
    an irreducible factor g, its degree d, and the multiplicative order of
    the class of t in F_p[t]/(g)."""

    p: int
    factor: tuple[int, ...]
    degree: int
    order: int

    def field(self) -> GF:
        return GF(self.p, list(self.factor))


def roots_of_delta_modp(delta_p: list[int], p: int) -> list[DeltaRoot]:
    """Irreducible factors of Delta mod p with the zero root (t-power
    factors) excluded, each with the order of its root class.  Repeated
    factors are collapsed: multiplicity does not change F_p(alpha)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not delta_p:
        raise NoRepresentationError(f"Alexander polynomial vanishes mod {p}")
    _, factors = fp_factor(delta_p, p)
    out = []
    for g, _mult in factors:
        if len(g) == 2 and g[0] == 0:
            continue  # the factor t: zero root
        field = GF(p, g)
        out.append(DeltaRoot(p, tuple(field.modulus), field.d,
                             field.mult_order(field.gen())))
    if not out:
        raise NoRepresentationError(
            f"Alexander polynomial is trivial mod {p}: no nonzero root")
    return out


@dataclass(frozen=True)
class AffineRep:
    presentation: GroupPresentation
    field: GF
    degrees: tuple[int, ...]          # abelianization degree per generator
    translations: tuple[tuple, ...]   # y_i per generator
    order_alpha: int

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def d(self) -> int:
        return self.field.d

    @property
    def alpha(self):
        return self.field.gen()

    @property
    def image_order(self) -> int:
        return self.order_alpha * self.field.order

    def generator_map(self, g: int) -> AffineMap:
        i = abs(g) - 1
        e = self.degrees[i]
        m = (e % self.order_alpha, self.translations[i])
        return m if g > 0 else self.invert(m)

    def identity(self) -> AffineMap:
        return (0, self.field.zero())

    def compose(self, m1: AffineMap, m2: AffineMap) -> AffineMap:
        """m1 after m2: z -> m1(m2(z))."""
        e1, u = m1
        e2, v = m2
        F = self.field
        return ((e1 + e2) % self.order_alpha,
                F.add(F.mul(F.pow(F.gen(), e1), v), u))

    def invert(self, m: AffineMap) -> AffineMap:
        e, u = m
        F = self.field
        ainv = F.pow(F.gen(), (-e) % self.order_alpha)
        return ((-e) % self.order_alpha, F.neg(F.mul(ainv, u)))

    def word_image(self, w: Word) -> AffineMap:
        out = self.identity()
        for g in w:
            out = self.compose(out, self.generator_map(g))
        return out

    def translation_subgroup_dim(self) -> int:
        """F_p-dimension of the translation part of the image."""
        F = self.field
        mer = self.presentation.meridian_index
        vecs = []
        for i in range(len(self.translations)):
            w = (i + 1,) + (-mer,) * self.degrees[i] if self.degrees[i] >= 0 \
                else (i + 1,) + (mer,) * (-self.degrees[i])
            e, u = self.word_image(w)
            assert e == 0
            for k in range(F.d):
                vecs.append(F.mul(F.pow(F.gen(), k), u))
        return F.fp_span_dim(vecs)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "modulus": list(self.field.modulus),
            "alpha_order": self.order_alpha,
            "degrees": list(self.degrees),
            "translations": [list(t) for t in self.translations],
            "image_order": self.image_order,
        }


def _evaluate_jacobian(pres: GroupPresentation, field: GF):
    jac = jacobian(pres)
    alpha = field.gen()

    def ev(lp):
        out = field.zero()
        for i, c in enumerate(lp.coeffs):
            if c:
                out = field.add(out, field.smul(c, field.pow(alpha, lp.low + i)))
        return out

    return [[ev(e) for e in row] for row in jac]


def build_rep(pres: GroupPresentation, p: int, factor: list[int]) -> AffineRep:
    """Construct the affine representation attached to the root class of the
    given irreducible factor of Delta mod p.

    Solves the evaluated Jacobian for a kernel vector, discards the
    conjugation direction ((alpha^e_i - 1))_i, and normalizes the meridian
    translation to zero.  Fails loudly if no kernel vector survives
    normalization, which would contradict the existence of the metabelian
    quotient."""
    field = GF(p, factor)
    alpha = field.gen()
    degrees = pres.abelianization_degrees()
    mat = _evaluate_jacobian(pres, field)
    basis = field.nullspace(mat) if mat else []
    if not mat:  # free group of rank 1: no metabelian quotient of this shape
        raise NoRepresentationError("presentation has no relators")
    conj_dir = [field.sub(field.pow(alpha, e), field.one()) for e in degrees]
    mer = pres.meridian_index - 1
    denom = conj_dir[mer]
    assert not field.is_zero(denom), "alpha = 1 cannot be a root of Delta"

    def normalize(vec):
        b = field.div(vec[mer], denom)
        return [field.sub(v, field.mul(cd, b)) for v, cd in zip(vec, conj_dir)]

    candidates = list(basis)
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            candidates.append([field.add(a, b) for a, b in zip(basis[i], basis[j])])
    for vec in candidates:
        y = normalize(vec)
        if any(not field.is_zero(v) for v in y):
            rep = AffineRep(pres, field, tuple(degrees),
                            tuple(tuple(v) for v in y),
                            field.mult_order(alpha))
            report = verify_rep(rep)
            if not report.ok:
                raise RuntimeError(f"constructed representation fails checks: {report}")
            return rep
    raise NoRepresentationError(
        "no kernel vector yields a nonabelian representation; "
        f"kernel dimension {len(basis)} at p={p}, factor={factor}")


@dataclass(frozen=True)
class RepVerification:
    relators_ok: bool
    translations_nonzero: bool
    span_full: bool
    image_order: int
    expected_order: int
    nonabelian: bool
    longitude_trivial: bool | None
    closure_order: int | None = None

    @property
    def ok(self):
        base = (self.relators_ok and self.translations_nonzero and self.span_full
                and self.image_order == self.expected_order and self.nonabelian)
        if self.longitude_trivial is not None:
            base = base and self.longitude_trivial
        if self.closure_order is not None:
            base = base and self.closure_order == self.expected_order
        return base


def verify_rep(rep: AffineRep, closure_limit: int = 0) -> RepVerification:
    """Check every relator maps to the identity, the image has order
    n * p^d with full translation subgroup, the image is nonabelian, and the
    longitude (when present) maps to the identity.  With closure_limit > 0
    and a small enough expected order, the image subgroup is additionally
    enumerated by brute force."""
    pres = rep.presentation
    F = rep.field
    ident = rep.identity()
    relators_ok = all(rep.word_image(r) == ident for r in pres.relators)
    translations_nonzero = any(not F.is_zero(t) for t in rep.translations)
    tdim = rep.translation_subgroup_dim()
    span_full = tdim == F.d
    image_order = rep.order_alpha * F.p ** tdim
    expected = rep.image_order
    nonabelian = rep.order_alpha > 1 and tdim > 0
    longitude_trivial = None
    if pres.longitude is not None:
        longitude_trivial = rep.word_image(pres.longitude) == ident
    closure_order = None
    if closure_limit and expected <= closure_limit:
        gens = [rep.generator_map(i + 1) for i in range(pres.num_generators)]
        gens += [rep.invert(g) for g in gens]
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for m in frontier:
                for g in gens:
                    m2 = rep.compose(m, g)
                    if m2 not in seen:
                        seen.add(m2)
                        nxt.append(m2)
            frontier = nxt
        closure_order = len(seen)
    return RepVerification(relators_ok, translations_nonzero, span_full,
                           image_order, expected, nonabelian,
                           longitude_trivial, closure_order)


def conjugate_scaled_equivalent(rep: AffineRep, other_translations) -> bool:
    """Whether the representation agrees with the given translation vector
    up to affine conjugation and scaling of the kernel vector (same alpha)."""
    F = rep.field
    alpha = F.gen()
    other = [F.elem(list(t)) if not isinstance(t, tuple) else t
             for t in other_translations]
    conj = [F.sub(F.pow(alpha, e), F.one()) for e in rep.degrees]
    mer = rep.presentation.meridian_index - 1
    b = F.div(other[mer], conj[mer])
    normalized = [F.sub(u, F.mul(cd, b)) for u, cd in zip(other, conj)]
    mine = list(rep.translations)
    pairs = [(u, v) for u, v in zip(mine, normalized)]
    scale = None
    for u, v in pairs:
        if F.is_zero(u) != F.is_zero(v):
            return False
        if not F.is_zero(u):
            s = F.div(v, u)
            if scale is None:
                scale = s
            elif scale != s:
                return False
    return scale is not None
