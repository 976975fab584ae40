#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "ilfb/bitstring.hpp"
#include "ilfb/channel_model.hpp"
#include "ilfb/huffman.hpp"

namespace ilfb {

/// A feasible beamforming vector (norm <= 1) together with the exact number of
/// feedback bits needed to describe it.
struct QuantizedBeamformer {
    std::vector<Complex> vector;
    std::uint64_t bit_cost = 0;
};

/// Per-component resolutions of the variable-rate quantizer: row i holds the
/// resolutions of Re x_i (column 0) and Im x_i (column 1).
class ResolutionMatrix {
public:
    ResolutionMatrix() = default;
    explicit ResolutionMatrix(std::size_t rows) : entries_(rows, {0, 0}) {}

    std::size_t rows() const { return entries_.size(); }
    int& at(std::size_t row, int part) { return entries_.at(row).at(part); }
    int at(std::size_t row, int part) const { return entries_.at(row).at(part); }
    int total() const;

    friend bool operator==(const ResolutionMatrix&, const ResolutionMatrix&) = default;

private:
    std::vector<std::array<int, 2>> entries_;
};

/// Norm tolerance accepted by the vector quantizers.
inline constexpr double kNormTolerance = 1e-12;

/// q(x; ell) = sign(x) floor(|x| 2^{ell+1}) / 2^{ell+1}, with sign(0) = +1 and a
/// zero result always returned as +0. Throws std::domain_error for |x| > 1.
double deadzone_scalar(double x, int ell);

/// Componentwise deadzone quantizer at a common resolution; bit_cost = 2 dim (ell + 3).
/// Throws std::domain_error if ||x|| > 1 + kNormTolerance.
QuantizedBeamformer deadzone_vector(std::span<const Complex> x, int ell);

/// Variable-rate deadzone quantizer q_v(x; ell). Returns only the vector.
std::vector<Complex> deadzone_vector(std::span<const Complex> x, const ResolutionMatrix& ell);

/// L(h) = max{ceil(log2(4k)), ceil(log2(4 k alpha / (||h||^2 - alpha)))} for a
/// length-k vector. Throws std::domain_error unless ||h||^2 > alpha.
int sufficient_resolution(std::span<const Complex> h, double alpha);
int sufficient_resolution(std::size_t k, double norm2, double alpha);

/// |<x, h>|^2 with <x, h> = sum conj(x_i) h_i.
double beamforming_gain(std::span<const Complex> x, std::span<const Complex> h);

/// h / ||h||. Components are clamped into [-1, 1] to absorb rounding.
std::vector<Complex> unit_direction(std::span<const Complex> h);

// Fixed-rate codec. For each complex entry, the real part and then the imaginary
// part; each real scalar is one sign bit (1 = negative) followed by ell + 2
// fraction bits b_1 .. b_{ell+2} of its magnitude. Magnitude exactly 1 is sent as
// all ones, which no other grid point produces since b_{ell+2} is otherwise 0.

/// Throws std::invalid_argument if a component is not on the resolution-ell grid.
BitString encode_beamformer(const QuantizedBeamformer& q, int ell);
/// Throws std::invalid_argument on wrong length or a non-canonical codeword.
QuantizedBeamformer decode_beamformer(const BitString& bits, std::size_t dim, int ell);

void encode_scalar(double value, int ell, BitString& out);
double decode_scalar(BitReader& in, int ell);

/// How the rate-allocation loop scores a candidate refinement.
enum class AllocationRule {
    /// One step of delta bits per iteration, scored by the raw gain increase.
    /// A component whose next binary digit is 0 scores zero and can starve.
    listing,
    /// Each real dimension looks ahead to its next refinement that changes the
    /// quantized value (in multiples of delta, within the remaining budget) and
    /// is scored by gain increase per bit; the winner takes that whole step.
    /// Identical to `listing` whenever every one-step refinement is nonzero.
    lookahead,
};

struct RateAllocation {
    QuantizedBeamformer beamformer;  ///< bit_cost = sum over real dims of (ell_ij + 3)
    ResolutionMatrix resolutions;
    int sufficient_resolution = 0;   ///< L(h_k)
    int budget = 0;                  ///< 2k(L + 3), the loop's rate cap
    int count = 0;                   ///< rate consumed by the loop
    double gain = 0.0;               ///< |<q_v, h_k>|^2 at exit
};

/// Greedy rate allocation. Starting from all-zero resolutions, repeatedly refines
/// the one real dimension whose refinement raises Re<q_v, h_hat> the most (see
/// AllocationRule), until the gain reaches alpha or `count` reaches 2k(L + 3).
///
/// Ties: the real column wins only on a strict improvement over the best
/// imaginary entry; within a column the smallest index wins.
/// Throws std::domain_error unless ||h_k||^2 > alpha.
RateAllocation variable_rate_quantize(std::span<const Complex> h_k, double alpha, int delta = 1,
                                      AllocationRule rule = AllocationRule::lookahead);

/// Feedback bits for a variable-rate beamformer: per real dimension, the
/// Huffman-coded resolution, one sign bit and ell + 2 fraction bits.
std::uint64_t variable_rate_cost(const ResolutionMatrix& ell, const HuffmanCode& code);

BitString encode_variable_beamformer(std::span<const Complex> q, const ResolutionMatrix& ell,
                                     const HuffmanCode& code);
/// Returns the vector and fills `ell` with the decoded resolutions.
std::vector<Complex> decode_variable_beamformer(const BitString& bits, std::size_t dim, const HuffmanCode& code,
                                                ResolutionMatrix& ell);

}  // namespace ilfb
