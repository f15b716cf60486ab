"""Naive exact linear algebra mod p, list-of-lists only.

Deliberately primitive: this is the independent cross-check for the
package's numpy-backed kernels, so it must not share any code with them.
"""


def rank_mod_p(rows, p):
    """Rank of an integer matrix over F_p by textbook Gaussian elimination."""
    mat = [[x % p for x in row] for row in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(mat)):
            if mat[r][col] % p:
                piv = r
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = pow(mat[rank][col], p - 2, p)
        mat[rank] = [(x * inv) % p for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                c = mat[r][col]
                mat[r] = [(a - c * b) % p for a, b in zip(mat[r], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return rank


def homology_dim(dim_here, rank_out, rank_in):
    """dim ker(d: here -> next) - dim im(d: prev -> here)."""
    return dim_here - rank_out - rank_in
