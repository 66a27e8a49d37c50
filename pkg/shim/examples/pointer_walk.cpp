// Hand-annotated two-level loop nest: an outer while loop that bumps a
// pointer by 100 each iteration, an inner for loop writing three bytes
// through it.  Analyzing the emitted trace must recover coefficients
// 1 (inner) and 103 (outer) over loop bounds 3 and 2; the base is
// wherever the buffer landed at run time.

#include <cstdio>

#include "foray_instrument.h"

int main() {
    FORAY_DECLARE_LOOP(1, 12, 13, 17);
    FORAY_DECLARE_LOOP(2, 15, 16, 14);

    char q[10000];
    char* ptr = q;
    int i, t1 = 98;
    FORAY_LOOP_BEGIN(12);
    while (t1 < 100) {
        FORAY_BODY_BEGIN(13);
        t1++;
        ptr += 100;
        FORAY_LOOP_BEGIN(15);
        for (i = 40; i > 37; i--) {
            FORAY_BODY_BEGIN(16);
            FORAY_ACCESS(0x4002a0, ptr, write);
            *ptr++ = static_cast<char>(i * i % 256);
            FORAY_BODY_END(14);
        }
        FORAY_BODY_END(17);
    }

    // keep the stores observable so they are not optimized away
    int sum = 0;
    for (int k = 0; k < 10000; k++) sum += q[k];
    std::fprintf(stderr, "checksum: %d\n", sum);
    return 0;
}
