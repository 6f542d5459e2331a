"""Pure-Python PBW straightening kernel.

Monomials are nondecreasing tuples of basis indices.  The only state is a
pair of memo tables; inserts are idempotent, so concurrent use at worst
repeats work.
"""
from ._scalar import ONE

_MEMO_CAP = 400_000


class PBWKernel:
    def __init__(self, dim, brackets):
        # brackets[(a, g)] for a > g: ((k, c), ...) with [u_a, u_g] = sum c u_k
        self.dim = dim
        self._br = {key: tuple(v) for key, v in brackets.items() if key[0] > key[1]}
        self._gen = {}
        self._mono = {}

    def clear(self):
        self._gen.clear()
        self._mono.clear()

    def memo_size(self):
        return len(self._gen) + len(self._mono)

    def mono_gen(self, mono, g):
        """Normal form of mono * u_g as {monomial: coeff}."""
        if not mono or mono[-1] <= g:
            return {mono + (g,): ONE}
        key = (mono, g)
        hit = self._gen.get(key)
        if hit is not None:
            return hit
        a = mono[-1]
        prefix = mono[:-1]
        out = {}
        # prefix * u_a * u_g = prefix * u_g * u_a + prefix * [u_a, u_g]
        for m, c in self.mono_gen(prefix, g).items():
            for m2, c2 in self.mono_gen(m, a).items():
                v = out.get(m2)
                out[m2] = c * c2 if v is None else v + c * c2
        for k, ck in self._br.get((a, g), ()):
            for m, c in self.mono_gen(prefix, k).items():
                v = out.get(m)
                out[m] = ck * c if v is None else v + ck * c
        out = {m: c for m, c in out.items() if c}
        self._gen[key] = out
        return out

    def mono_mono(self, ma, mb):
        if not mb:
            return {ma: ONE}
        if not ma or ma[-1] <= mb[0]:
            return {ma + mb: ONE}
        key = (ma, mb)
        hit = self._mono.get(key)
        if hit is not None:
            return hit
        cur = {ma: ONE}
        for g in mb:
            nxt = {}
            for m, c in cur.items():
                for m2, c2 in self.mono_gen(m, g).items():
                    v = nxt.get(m2)
                    nxt[m2] = c * c2 if v is None else v + c * c2
            cur = {m: c for m, c in nxt.items() if c}
        if len(self._mono) > _MEMO_CAP:
            self._mono.clear()
        self._mono[key] = cur
        return cur

    def mul(self, A, B):
        """Product of two sparse term maps."""
        out = {}
        for mb, cb in B.items():
            for ma, ca in A.items():
                cab = ca * cb
                for m, c in self.mono_mono(ma, mb).items():
                    v = out.get(m)
                    out[m] = cab * c if v is None else v + cab * c
        return {m: c for m, c in out.items() if c}
