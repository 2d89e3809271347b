// Frozen reference constants, computed before the build with 60-digit
// arithmetic (series summation and exact-base extended-precision powers).
// Regenerate with tests/tools/make_reference_values.py.
#pragma once

namespace refvals {

// psi(1) by direct series summation (400 terms at 60 digits).
inline constexpr double psi_at_1 = 0.3603267007162563353413522;

// r^2 psi(r) at r = 2^20.
inline constexpr double r2psi_at_2p20 = 0.6666662579492439694781587;

// (1 - 2^-20)^(2^20): the near-1 powering path.
inline constexpr double pow_1m2m20 = 0.3678792657527853269341443;

// (1 - 2^-10)^(2^10): ladder eigenvalue of the exactly 1-stable seed with
// sigma = fl(2/3) at step i = 10, level j = 0 (the base 1 - 2^-10 is exact
// in double precision because 1.5 * fl(2/3) rounds to 1).
inline constexpr double powerlaw_clt_i10_j0 = 0.3676997394112712008407511;

// Worst |(Lambda_{j-i})^{2^i} - e^{-2^j}| over j in [-6, 6] for the same
// seed, t = 1, at selected ladder steps. Lambda_{j-i} = max(0, 1 - 2^{j-i}).
struct LadderErr {
    int i;
    double eps;
};
inline constexpr LadderErr ladder_eps[] = {
    {4, 0.01726819621536389638535},
    {8, 0.001058683586453016482727},
    {12, 0.00006608705900863071147703},
    {16, 0.00000413012608604306380457},
    {20, 2.581316495104610455314e-7},
};

// The same worst-error sequence is nonincreasing from i = 1 on.
inline constexpr int ladder_monotone_from = 1;

} // namespace refvals
