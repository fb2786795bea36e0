"""Independent reference computations used by the tests.

Each oracle takes a different route from the code under test: brute-force
enumeration instead of elimination, the raw relation ideal instead of the
rewriting system, the textbook Z_r / B_r formula instead of incremental
page turning.
"""

from f2spectral.linalg import BitMatrix, Subspace, kernel_basis


def brute_rank(rows, cols):
    """Size of the row span by enumerating all combinations."""
    span = {0}
    for r in rows:
        span |= {s ^ r for s in span}
    return len(span).bit_length() - 1


def brute_kernel_dim(rows, cols):
    count = 0
    for x in range(1 << cols):
        if all(bin(r & x).count("1") % 2 == 0 for r in rows):
            count += 1
    return count.bit_length() - 1


def monomials(weights, d):
    out = []

    def walk(i, rem, pre):
        if i == len(weights):
            if rem == 0:
                out.append(tuple(pre))
            return
        for e in range(rem // weights[i] + 1):
            walk(i + 1, rem - e * weights[i], pre + [e])

    if d >= 0:
        walk(0, d, [])
    return out


def hilbert_by_enumeration(presentation, upto):
    """dim A_d = #monomials - dim span{m * r} over all relations r."""
    weights = presentation.weights
    out = []
    for d in range(upto + 1):
        mons = monomials(weights, d)
        index = {m: i for i, m in enumerate(mons)}
        vectors = []
        for rel in presentation.relations:
            rd = presentation.degree(next(iter(rel)))
            for m in monomials(weights, d - rd):
                v = 0
                for t in rel:
                    v ^= 1 << index[tuple(a + b for a, b in zip(m, t))]
                vectors.append(v)
        out.append(len(mons) - Subspace.span(vectors, len(mons)).dim)
    return out


def filtered_page_dims(model, r):
    """E_r^{p,q} dims from Z_r^p / (Z_{r-1}^{p+1} + D Z_{r-1}^{p-r+1}).

    Uses only the D matrices of the model and its bit layout.
    """
    out = {}

    def fmask(n, p):
        # F^p C^n: filtration >= p occupies the low bits up to the end of group p.
        if p > n:
            return 0
        if p <= 0:
            return (1 << model.dim(n)) - 1
        return (1 << model.layout(n)[2][p][1]) - 1

    def Z(n, p, s):
        """Z_s^p in degree n: c in F^p with Dc in F^{p+s}."""
        dim = model.dim(n)
        coords = [j for j in range(dim) if (fmask(n, p) >> j) & 1]
        if n > model.bound:
            return Subspace.span([1 << j for j in coords], dim)
        low = ((1 << model.dim(n + 1)) - 1) & ~fmask(n + 1, p + s)
        cols = [model.d_columns(n)[j] & low for j in coords]
        vecs = []
        for combo in _kernel(cols, model.dim(n + 1), len(coords)):
            v = 0
            for i in range(len(coords)):
                if (combo >> i) & 1:
                    v |= 1 << coords[i]
            vecs.append(v)
        return Subspace.span(vecs, dim)

    for n in range(model.bound + 1):
        for p in range(n + 1):
            if not model.group_dim(p, n - p):
                continue
            zr = Z(n, p, r)
            denom = Z(n, p + 1, r - 1)
            if n >= 1:
                src = Z(n - 1, p - r + 1, r - 1)
                imgs = [model.apply_d(n - 1, v) for v in src.basis]
                denom = denom.extend(imgs)
            d = zr.dim - denom.intersection(zr).dim
            if d:
                out[(p, n - p)] = d
    return out


def _kernel(cols, rows, ncols):
    return kernel_basis(BitMatrix.from_columns(cols, rows)).basis


def poincare_series_product(a, b, upto):
    out = [0] * (upto + 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            if i + j <= upto:
                out[i + j] += x * y
    return out
