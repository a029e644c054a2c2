#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "subnetx/errors.hpp"
#include "subnetx/rng.hpp"

namespace subnetx {

// Binary genotype over atlas nodes: bit i set means node i belongs to the
// candidate sub-network.
class SubnetMask {
public:
    SubnetMask() = default;
    explicit SubnetMask(std::size_t n) : bits_(n, 0) {}

    static SubnetMask all_ones(std::size_t n) {
        SubnetMask m(n);
        for (auto& b : m.bits_) b = 1;
        return m;
    }

    static SubnetMask from_string(const std::string& s) {
        SubnetMask m(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1') {
                m.bits_[i] = 1;
            } else if (s[i] != '0') {
                throw DataError("mask string must contain only 0 and 1");
            }
        }
        return m;
    }

    static SubnetMask from_nodes(std::size_t n, const std::vector<int>& nodes) {
        SubnetMask m(n);
        for (int v : nodes) {
            if (v < 0 || static_cast<std::size_t>(v) >= n) {
                throw DataError("mask node index out of range");
            }
            m.bits_[static_cast<std::size_t>(v)] = 1;
        }
        return m;
    }

    std::size_t size() const { return bits_.size(); }

    bool test(std::size_t i) const { return bits_[i] != 0; }
    void set(std::size_t i, bool value) { bits_[i] = value ? 1 : 0; }
    void flip(std::size_t i) { bits_[i] ^= 1; }

    std::size_t popcount() const {
        std::size_t c = 0;
        for (auto b : bits_) c += b;
        return c;
    }

    std::vector<int> selected_nodes() const {
        std::vector<int> out;
        out.reserve(popcount());
        for (std::size_t i = 0; i < bits_.size(); ++i) {
            if (bits_[i]) out.push_back(static_cast<int>(i));
        }
        return out;
    }

    std::string to_string() const {
        std::string s(bits_.size(), '0');
        for (std::size_t i = 0; i < bits_.size(); ++i) {
            if (bits_[i]) s[i] = '1';
        }
        return s;
    }

    std::uint64_t hash64() const {
        return fnv1a64(bits_.data(), bits_.size());
    }

    std::size_t hamming_distance(const SubnetMask& other) const {
        std::size_t d = 0;
        for (std::size_t i = 0; i < bits_.size(); ++i) {
            d += bits_[i] != other.bits_[i];
        }
        return d;
    }

    friend bool operator==(const SubnetMask& a, const SubnetMask& b) {
        return a.bits_ == b.bits_;
    }
    friend bool operator!=(const SubnetMask& a, const SubnetMask& b) {
        return !(a == b);
    }
    // lexicographic order on the bit string; used for rank tie-breaks
    friend bool operator<(const SubnetMask& a, const SubnetMask& b) {
        return a.bits_ < b.bits_;
    }

private:
    std::vector<std::uint8_t> bits_;
};

} // namespace subnetx
