#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gridslp/builder.hpp"
#include "gridslp/grammar.hpp"
#include "gridslp/matrix.hpp"

namespace gridslp {

/// Bin_N for N = 2^n: row i holds the n-bit binary form of i-1 between '$'.
/// n = 0 is accepted and yields the 1x2 string "$$".
Grammar build_bin(unsigned n);

/// ShiftBin_N: 2N x N(n+2); block j (columns j(n+2)+1..(j+1)(n+2)) holds
/// Bin_N at rows j+1..j+N, every other cell is '0'.
Grammar build_shiftbin(unsigned n);

/// Largest m with 2^m (m+2) <= width/2, i.e. log2 of the ShiftBin size used
/// by C_{N,M}. Throws ParameterError when width < 4.
unsigned cnm_shift_log(Dim width);

/// C_{N,M}: a left block of floor(N/2M') stacked ShiftBin_{M'} copies and a
/// right block of floor((N-M')/2M') copies starting at row M'+1, both padded
/// with '0' to height N, then '0' columns up to width M.
/// Requires M >= 4 and N >= 2M'.
Grammar build_cnm(Dim rows, Dim cols);

struct CnmSequence {
    Grammar grammar;
    /// roots[i] derives C_{N + i*step, M}.
    std::vector<SymbolId> roots;
};

/// One grammar holding C_{N+i*step,M} for i = 0..k. step must be a positive
/// multiple of M' with step <= N.
CnmSequence build_cnm_sequence(Dim rows, Dim cols, Dim step, unsigned k);

struct SpiralParams {
    Dim n = 0;          // side length N
    double c = 0;       // depth constant
    double delta_prime = 0;
    Dim shift = 0;      // M'
    Dim delta = 0;      // largest multiple of M' not above delta_prime
    Dim lambda = 0;     // ceil(2c log2 N)
    Dim center_rows = 0;
    Dim center_cols = 0;
};

/// Throws ParameterError unless N is a power of two and the parameters are
/// consistent (delta in [delta'/2, delta'], M' rederivable from delta,
/// positive center).
SpiralParams spiral_params(Dim n, double c);

/// The N x N spiral of rotated C_{N',delta} gadgets with start F0_0.
Grammar build_spiral(Dim n, double c);

/// Number of distinct n-bit words w such that "$w$" occurs in row.
std::size_t distinct_blocks(std::u32string_view row, unsigned n);

// Cell-by-cell constructions straight from the definitions.
Matrix reference_bin(unsigned n);
Matrix reference_shiftbin(unsigned n);
Matrix reference_cnm(Dim rows, Dim cols);

/// Deterministic valid plain grammar with g symbols and dimensions at most
/// max_dim on each side. Start is the last symbol created.
Grammar random_grammar(std::uint64_t seed, std::size_t g, Dim max_dim);

/// Left-deep chain X_1 = aa, X_{i+1} = X_i a along axis: g concatenations
/// deriving a^(g+1) with depth g+1. g = 0 gives the terminal alone.
Grammar build_caterpillar(std::size_t g, Axis axis = Axis::Horizontal);

// Building blocks shared by the constructions above.

/// count copies of sym along axis with O(log count) symbols (count >= 1).
SymbolId repeat_symbol(ShapeBuilder& b, SymbolId sym, Dim count, Axis axis);

/// rows x cols block of '0' with O(log rows + log cols) symbols.
SymbolId zero_block(ShapeBuilder& b, Dim rows, Dim cols);

}  // namespace gridslp
