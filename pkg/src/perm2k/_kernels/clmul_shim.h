#ifndef PERM2K_CLMUL_SHIM_H
#define PERM2K_CLMUL_SHIM_H

#include <stdint.h>

/* 64x64 -> 128 bit carry-less multiply.  Uses PCLMULQDQ when the
 * extension was compiled with -mpclmul, a plain shift-xor loop otherwise. */

#if defined(__PCLMUL__) && defined(__SSE4_1__)

#include <wmmintrin.h>
#include <smmintrin.h>

static const int GF2_HAVE_CLMUL = 1;

static inline void clmul64(uint64_t a, uint64_t b, uint64_t *lo, uint64_t *hi)
{
    __m128i x = _mm_clmulepi64_si128(_mm_set_epi64x(0, (long long)a),
                                     _mm_set_epi64x(0, (long long)b), 0x00);
    *lo = (uint64_t)_mm_extract_epi64(x, 0);
    *hi = (uint64_t)_mm_extract_epi64(x, 1);
}

#else

static const int GF2_HAVE_CLMUL = 0;

static inline void clmul64(uint64_t a, uint64_t b, uint64_t *lo, uint64_t *hi)
{
    uint64_t l = 0, h = 0;
    int i;
    for (i = 0; i < 64; i++) {
        if ((b >> i) & 1) {
            l ^= a << i;
            if (i)
                h ^= a >> (64 - i);
        }
    }
    *lo = l;
    *hi = h;
}

#endif

static inline int bitlen64(uint64_t x)
{
    return x ? 64 - __builtin_clzll(x) : 0;
}

#endif /* PERM2K_CLMUL_SHIM_H */
