# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: popcount convolution and the interval-cover scan.

The convolution kernels compute pair-sum counts as shifted AND/popcount
passes over 64-bit words against a pre-reversed copy of the indicator
vector.  The search kernel is the same depth-first scan as the pure
backend, kept bitwise-identical in visit order and pruning so reports
never depend on which backend ran.
"""

from libc.stdint cimport int32_t, int64_t, uint64_t
from libc.stdlib cimport calloc, free, malloc
from libc.string cimport memcpy

cdef extern from *:
    """
    #if defined(__GNUC__) || defined(__clang__)
    #define EQREP_POPCNT(x) __builtin_popcountll(x)
    #define EQREP_CTZ(x) __builtin_ctzll(x)
    #else
    static int EQREP_POPCNT(unsigned long long x)
    { int c = 0; while (x) { x &= x - 1; c++; } return c; }
    static int EQREP_CTZ(unsigned long long x)
    { int c = 0; while (!(x & 1)) { x >>= 1; c++; } return c; }
    #endif
    """
    int EQREP_POPCNT(uint64_t x) nogil
    int EQREP_CTZ(uint64_t x) nogil


cdef inline uint64_t _bitrev64(uint64_t x) nogil:
    x = ((x >> 1) & 0x5555555555555555ULL) | ((x & 0x5555555555555555ULL) << 1)
    x = ((x >> 2) & 0x3333333333333333ULL) | ((x & 0x3333333333333333ULL) << 2)
    x = ((x >> 4) & 0x0F0F0F0F0F0F0F0FULL) | ((x & 0x0F0F0F0F0F0F0F0FULL) << 4)
    x = ((x >> 8) & 0x00FF00FF00FF00FFULL) | ((x & 0x00FF00FF00FF00FFULL) << 8)
    x = ((x >> 16) & 0x0000FFFF0000FFFFULL) | ((x & 0x0000FFFF0000FFFFULL) << 16)
    return (x >> 32) | (x << 32)


cdef uint64_t* _reversed_words(const uint64_t[::1] words, Py_ssize_t nbits) nogil:
    # Bit-reversal of the nbits-long vector, one zeroed guard word appended.
    cdef Py_ssize_t nwords = words.shape[0]
    cdef Py_ssize_t pad = nwords * 64 - nbits
    cdef uint64_t* rev = <uint64_t*> calloc(nwords + 1, sizeof(uint64_t))
    if rev == NULL:
        return NULL
    cdef Py_ssize_t k
    for k in range(nwords):
        rev[k] = _bitrev64(words[nwords - 1 - k])
    if pad:
        for k in range(nwords):
            rev[k] = (rev[k] >> pad) | (rev[k + 1] << (64 - pad))
    return rev


cdef uint64_t* _guarded_copy(const uint64_t[::1] words) nogil:
    cdef Py_ssize_t nwords = words.shape[0]
    cdef uint64_t* out = <uint64_t*> calloc(nwords + 1, sizeof(uint64_t))
    if out == NULL:
        return NULL
    memcpy(out, &words[0], nwords * sizeof(uint64_t))
    return out


cdef inline int64_t _dot_shifted(const uint64_t* u, Py_ssize_t nu,
                                 const uint64_t* v, Py_ssize_t nv,
                                 Py_ssize_t shift) nogil:
    # sum_k popcount(u[k] & (v >> shift)[k]); v carries a zeroed guard word.
    cdef Py_ssize_t sw = shift >> 6
    cdef Py_ssize_t sb = shift & 63
    cdef Py_ssize_t limit = nv - sw
    if limit > nu:
        limit = nu
    cdef int64_t total = 0
    cdef Py_ssize_t k
    cdef uint64_t x
    if sb:
        for k in range(limit):
            x = (v[k + sw] >> sb) | (v[k + sw + 1] << (64 - sb))
            total += EQREP_POPCNT(u[k] & x)
    else:
        for k in range(limit):
            total += EQREP_POPCNT(u[k] & v[k + sw])
    return total


def ordered_counts(const uint64_t[::1] words, Py_ssize_t nbits, Py_ssize_t bound,
                   int64_t[::1] out):
    """out[n] = #{(x, y) : x + y = n} over the words-encoded set, 0 <= n <= bound."""
    cdef Py_ssize_t nwords = words.shape[0]
    cdef uint64_t* base = _guarded_copy(words)
    cdef uint64_t* rev = _reversed_words(words, nbits)
    if base == NULL or rev == NULL:
        free(base)
        free(rev)
        raise MemoryError()
    cdef Py_ssize_t n, s
    with nogil:
        for n in range(bound + 1):
            s = nbits - 1 - n
            if s >= 0:
                out[n] = _dot_shifted(base, nwords, rev, nwords, s)
            elif -s < nbits:
                out[n] = _dot_shifted(rev, nwords, base, nwords, -s)
            else:
                out[n] = 0
    free(base)
    free(rev)


def cross_counts(const uint64_t[::1] words_a, Py_ssize_t nbits_a,
                 const uint64_t[::1] words_b, Py_ssize_t nbits_b,
                 Py_ssize_t bound, int64_t[::1] out):
    """out[n] = #{(x, y) : x in a, y in b, x + y = n}, 0 <= n <= bound."""
    cdef Py_ssize_t nwords_a = words_a.shape[0]
    cdef Py_ssize_t nwords_b = words_b.shape[0]
    cdef uint64_t* base = _guarded_copy(words_a)
    cdef uint64_t* rev = _reversed_words(words_b, nbits_b)
    if base == NULL or rev == NULL:
        free(base)
        free(rev)
        raise MemoryError()
    cdef Py_ssize_t n, s
    with nogil:
        for n in range(bound + 1):
            s = nbits_b - 1 - n
            if s >= 0:
                out[n] = _dot_shifted(base, nwords_a, rev, nwords_b, s)
            elif -s < nbits_a:
                out[n] = _dot_shifted(rev, nwords_b, base, nwords_a, -s)
            else:
                out[n] = 0
    free(base)
    free(rev)


cdef enum:
    P2_SOLUTION_CAP = 4096


cdef struct P2State:
    int size
    int nfree
    bint prune
    int64_t leaves
    int nsols
    bint overflow
    int32_t c_a[64]
    int32_t c_b[64]
    unsigned char free_el[64]
    uint64_t* sol_a
    uint64_t* sol_b


cdef inline void _p2_add(int32_t* c, uint64_t members, int x) nogil:
    while members:
        c[x + EQREP_CTZ(members)] += 1
        members &= members - 1


cdef inline void _p2_sub(int32_t* c, uint64_t members, int x) nogil:
    while members:
        c[x + EQREP_CTZ(members)] -= 1
        members &= members - 1


cdef inline bint _p2_window_ok(P2State* st, int lo, int hi) nogil:
    cdef int n
    for n in range(lo, hi + 1):
        if st.c_a[n] != st.c_b[n]:
            return False
    return True


cdef void _p2_dfs(P2State* st, int idx, uint64_t mask_a, uint64_t mask_b, int prev) nogil:
    cdef int x, lo
    if idx == st.nfree:
        st.leaves += 1
        lo = prev + 1 if st.prune else 0
        if _p2_window_ok(st, lo, st.size - 1):
            if st.nsols >= P2_SOLUTION_CAP:
                st.overflow = True
            else:
                st.sol_a[st.nsols] = mask_a
                st.sol_b[st.nsols] = mask_b
                st.nsols += 1
        return
    x = st.free_el[idx]
    _p2_add(st.c_a, mask_a, x)
    if not st.prune or _p2_window_ok(st, prev + 1, x):
        _p2_dfs(st, idx + 1, mask_a | (<uint64_t>1 << x), mask_b, x)
    _p2_sub(st.c_a, mask_a, x)
    _p2_add(st.c_b, mask_b, x)
    if not st.prune or _p2_window_ok(st, prev + 1, x):
        _p2_dfs(st, idx + 1, mask_a, mask_b | (<uint64_t>1 << x), x)
    _p2_sub(st.c_b, mask_b, x)


def p2_scan_shard(int m, int r, unsigned long long prefix_bits, int prefix_len, bint prune):
    """Scan one shard; see the pure backend for the contract."""
    if not 2 <= m <= 31:
        raise ValueError("compiled scan supports 2 <= m <= 31")
    cdef P2State st
    cdef int i, x, n
    cdef uint64_t mask_a, mask_b
    cdef int prev = 0
    st.size = 2 * m - 1
    st.prune = prune
    st.leaves = 0
    st.nsols = 0
    st.overflow = False
    for n in range(st.size):
        st.c_a[n] = 0
        st.c_b[n] = 0
    st.nfree = 0
    if r == 0:
        mask_a = 0b11
        mask_b = 0b01
        st.c_a[1] = 1
        for x in range(2, m):
            st.free_el[st.nfree] = x
            st.nfree += 1
    else:
        mask_a = (<uint64_t>1 << r) | 1
        mask_b = <uint64_t>1 << r
        st.c_a[r] = 1
        for x in range(1, m):
            if x != r:
                st.free_el[st.nfree] = x
                st.nfree += 1
    if prefix_len > st.nfree:
        raise ValueError("prefix longer than the free element list")
    st.sol_a = <uint64_t*> malloc(P2_SOLUTION_CAP * sizeof(uint64_t))
    st.sol_b = <uint64_t*> malloc(P2_SOLUTION_CAP * sizeof(uint64_t))
    if st.sol_a == NULL or st.sol_b == NULL:
        free(st.sol_a)
        free(st.sol_b)
        raise MemoryError()
    try:
        for i in range(prefix_len):
            x = st.free_el[i]
            if (prefix_bits >> i) & 1:
                _p2_add(st.c_b, mask_b, x)
                mask_b |= <uint64_t>1 << x
            else:
                _p2_add(st.c_a, mask_a, x)
                mask_a |= <uint64_t>1 << x
            if prune and not _p2_window_ok(&st, prev + 1, x):
                return 0, []
            prev = x
        with nogil:
            _p2_dfs(&st, prefix_len, mask_a, mask_b, prev)
        if st.overflow:
            raise RuntimeError("solution buffer overflow in compiled scan")
        sols = [(int(st.sol_a[i]), int(st.sol_b[i])) for i in range(st.nsols)]
        return int(st.leaves), sols
    finally:
        free(st.sol_a)
        free(st.sol_b)
