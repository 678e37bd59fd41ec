#ifndef FSMISS_FEATURE_MASK_HPP
#define FSMISS_FEATURE_MASK_HPP

#include "fsmiss/error.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fsmiss {

/// Binary feature selection. bits[j] != 0 means feature j is used.
struct FeatureMask {
    std::vector<std::uint8_t> bits;

    FeatureMask() = default;
    explicit FeatureMask(std::size_t n) : bits(n, 0) {}
    explicit FeatureMask(std::vector<std::uint8_t> b) : bits(std::move(b)) {}

    std::size_t size() const noexcept { return bits.size(); }
    bool selected(std::size_t j) const noexcept { return bits[j] != 0; }

    std::size_t selected_count() const noexcept {
        std::size_t c = 0;
        for (auto b : bits) c += b ? 1 : 0;
        return c;
    }

    /// Indices of the selected features, ascending.
    std::vector<std::size_t> selected_indices() const {
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < bits.size(); ++j) {
            if (bits[j]) out.push_back(j);
        }
        return out;
    }

    /// '0'/'1' string, feature 0 first.
    std::string to_string() const {
        std::string s(bits.size(), '0');
        for (std::size_t j = 0; j < bits.size(); ++j) {
            if (bits[j]) s[j] = '1';
        }
        return s;
    }

    static FeatureMask from_string(std::string_view s) {
        FeatureMask m(s.size());
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (s[j] == '1') {
                m.bits[j] = 1;
            } else if (s[j] != '0') {
                throw parse_error("feature mask must contain only '0' and '1'");
            }
        }
        return m;
    }

    bool operator==(const FeatureMask&) const = default;
};

}  // namespace fsmiss

#endif  // FSMISS_FEATURE_MASK_HPP
