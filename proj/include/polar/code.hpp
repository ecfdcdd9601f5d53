#pragma once

#include <cstdint>
#include <vector>

namespace polar {

struct CodeConfig {
    uint32_t N = 0;  // block length, power of two
    uint32_t n = 0;  // log2(N)
    uint32_t K = 0;  // information length
    double design_param = 0.5;
    std::vector<uint32_t> frozen_set;    // 1-based, sorted ascending, size N-K
    std::vector<uint8_t> frozen_mask;    // size N, 0-based, 1 = frozen
    std::vector<uint8_t> frozen_values;  // size N, consulted where frozen_mask is set
};

uint32_t bit_reverse(uint32_t v, uint32_t bits);

// x = u * F^{(x)n} over GF(2), F = [[1,0],[1,1]], no bit-reversal permutation.
// In-place butterfly: XOR the first half with the second, recurse into halves.
void encode_inplace(std::vector<uint8_t>& u);
std::vector<uint8_t> encode(const std::vector<uint8_t>& u, const CodeConfig& config);

// Bhattacharyya construction over a BEC with erasure probability design_param:
// z -> {2z - z^2, z^2} per level, most significant index bit first. The N-K
// indices with the largest parameter are frozen; on ties the smaller index is
// frozen first. Returned 1-based, sorted ascending.
std::vector<uint32_t> construct_frozen_set(uint32_t N, uint32_t K, double design_param);

CodeConfig make_code_config(uint32_t N, uint32_t K, double design_param = 0.5);
// Custom frozen map; frozen_values may be empty (all-zero) or size N.
CodeConfig make_code_config(uint32_t N, uint32_t K, std::vector<uint32_t> frozen_set,
                            std::vector<uint8_t> frozen_values);

}  // namespace polar
