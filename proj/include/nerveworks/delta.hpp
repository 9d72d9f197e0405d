#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace nw {

/// A monotone map [m] -> [n], stored as its value table.
class OrdinalMap {
public:
    OrdinalMap() = default;
    /// Throws ArgumentError unless `values` is weakly increasing with entries <= target.
    OrdinalMap(int target, std::vector<int> values);

    static OrdinalMap identity(int n);
    static OrdinalMap face(int n, int i);        // [n-1] -> [n], misses i
    static OrdinalMap degeneracy(int n, int i);  // [n] -> [n-1], repeats i
    static OrdinalMap constant(int n, int value, int source = 0);

    int source() const { return static_cast<int>(values_.size()) - 1; }
    int target() const { return target_; }
    const std::vector<int>& values() const { return values_; }
    int operator()(int k) const { return values_[static_cast<std::size_t>(k)]; }

    bool is_injective() const;
    bool is_surjective() const;
    bool is_identity() const { return is_injective() && is_surjective(); }

    /// Bit i set iff the map hits i.
    std::uint32_t image_mask() const;
    /// For surjections: bit i set iff values[i] == values[i+1].
    std::uint32_t degeneracy_mask() const;

    std::string to_string() const;

    friend bool operator==(const OrdinalMap&, const OrdinalMap&) = default;
    friend auto operator<=>(const OrdinalMap& a, const OrdinalMap& b) {
        if (auto c = a.target_ <=> b.target_; c != 0) return c;
        return a.values_ <=> b.values_;
    }

private:
    int target_ = 0;
    std::vector<int> values_{0};
};

/// Generator kinds of the simplex category.
enum class Generator { face, degeneracy };

OrdinalMap generator(Generator kind, int n, int i);

/// "f then g". Throws ArgumentError when f.target() != g.source().
OrdinalMap compose(const OrdinalMap& g, const OrdinalMap& f);

struct EpiMono {
    OrdinalMap epi;
    OrdinalMap mono;
};

EpiMono epi_mono_factorize(const OrdinalMap& f);

/// k -> n - f(m - k).
OrdinalMap opposite(const OrdinalMap& f);

/// The injection [k] -> [n] whose image is the set bits of `mask`.
OrdinalMap injection_from_mask(int n, std::uint32_t mask);
/// The surjection [n] -> [n - popcount(mask)] collapsing i, i+1 for every set bit i.
OrdinalMap surjection_from_mask(int n, std::uint32_t mask);

struct GeneratorStep {
    Generator kind;
    int n;  // ambient index as in generator(kind, n, i)
    int i;
};

/// Canonical word: f = (faces, decreasing index) o (degeneracies, increasing index).
/// The returned list is in application order (first element applied first).
std::vector<GeneratorStep> generator_word(const OrdinalMap& f);
OrdinalMap evaluate_word(int source, const std::vector<GeneratorStep>& word);

std::vector<OrdinalMap> all_monotone_maps(int m, int n);
std::vector<OrdinalMap> all_surjections(int m, int n);
std::vector<OrdinalMap> all_injections(int m, int n);

/// Relabels a finite totally ordered set of distinct keys as [n].
std::vector<int> normalize_order(const std::vector<int>& sorted_distinct_keys, const std::vector<int>& values);

}  // namespace nw

template <>
struct std::hash<nw::OrdinalMap> {
    std::size_t operator()(const nw::OrdinalMap& f) const noexcept {
        std::size_t h = static_cast<std::size_t>(f.target()) * 1000003u;
        for (int v : f.values()) h = h * 31u + static_cast<std::size_t>(v);
        return h;
    }
};
