#include "nerveworks/delta.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "nerveworks/error.hpp"

namespace nw {

OrdinalMap::OrdinalMap(int target, std::vector<int> values) : target_(target), values_(std::move(values)) {
    if (values_.empty()) throw ArgumentError("OrdinalMap: empty value table");
    if (target_ < 0) throw ArgumentError("OrdinalMap: negative target");
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (values_[k] < 0 || values_[k] > target_)
            throw ArgumentError("OrdinalMap: value out of range at position " + std::to_string(k));
        if (k > 0 && values_[k] < values_[k - 1])
            throw ArgumentError("OrdinalMap: values not monotone at position " + std::to_string(k));
    }
}

OrdinalMap OrdinalMap::identity(int n) {
    if (n < 0) throw ArgumentError("identity: negative ordinal");
    std::vector<int> v(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) v[static_cast<std::size_t>(k)] = k;
    return OrdinalMap(n, std::move(v));
}

OrdinalMap OrdinalMap::face(int n, int i) {
    if (n < 1 || i < 0 || i > n)
        throw ArgumentError("face(" + std::to_string(n) + "," + std::to_string(i) + "): index out of range");
    std::vector<int> v;
    v.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) v.push_back(k < i ? k : k + 1);
    return OrdinalMap(n, std::move(v));
}

OrdinalMap OrdinalMap::degeneracy(int n, int i) {
    if (n < 1 || i < 0 || i > n - 1)
        throw ArgumentError("degeneracy(" + std::to_string(n) + "," + std::to_string(i) + "): index out of range");
    std::vector<int> v;
    v.reserve(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) v.push_back(k <= i ? k : k - 1);
    return OrdinalMap(n - 1, std::move(v));
}

OrdinalMap OrdinalMap::constant(int n, int value, int source) {
    return OrdinalMap(n, std::vector<int>(static_cast<std::size_t>(source) + 1, value));
}

bool OrdinalMap::is_injective() const {
    for (std::size_t k = 1; k < values_.size(); ++k)
        if (values_[k] == values_[k - 1]) return false;
    return true;
}

bool OrdinalMap::is_surjective() const {
    if (values_.front() != 0 || values_.back() != target_) return false;
    for (std::size_t k = 1; k < values_.size(); ++k)
        if (values_[k] > values_[k - 1] + 1) return false;
    return true;
}

std::uint32_t OrdinalMap::image_mask() const {
    std::uint32_t m = 0;
    for (int v : values_) m |= (1u << v);
    return m;
}

std::uint32_t OrdinalMap::degeneracy_mask() const {
    std::uint32_t m = 0;
    for (std::size_t k = 0; k + 1 < values_.size(); ++k)
        if (values_[k] == values_[k + 1]) m |= (1u << k);
    return m;
}

std::string OrdinalMap::to_string() const {
    std::ostringstream os;
    os << "[" << source() << "]->[" << target_ << "](";
    for (std::size_t k = 0; k < values_.size(); ++k) os << (k ? "," : "") << values_[k];
    os << ")";
    return os.str();
}

OrdinalMap generator(Generator kind, int n, int i) {
    return kind == Generator::face ? OrdinalMap::face(n, i) : OrdinalMap::degeneracy(n, i);
}

OrdinalMap compose(const OrdinalMap& g, const OrdinalMap& f) {
    if (f.target() != g.source())
        throw ArgumentError("compose: " + f.to_string() + " does not land in the source of " + g.to_string());
    std::vector<int> v;
    v.reserve(f.values().size());
    for (int x : f.values()) v.push_back(g(x));
    return OrdinalMap(g.target(), std::move(v));
}

EpiMono epi_mono_factorize(const OrdinalMap& f) {
    std::vector<int> image;
    std::vector<int> epi;
    epi.reserve(f.values().size());
    for (int x : f.values()) {
        if (image.empty() || image.back() != x) image.push_back(x);
        epi.push_back(static_cast<int>(image.size()) - 1);
    }
    const int k = static_cast<int>(image.size()) - 1;
    return {OrdinalMap(k, std::move(epi)), OrdinalMap(f.target(), std::move(image))};
}

OrdinalMap opposite(const OrdinalMap& f) {
    const int m = f.source();
    const int n = f.target();
    std::vector<int> v(static_cast<std::size_t>(m) + 1);
    for (int k = 0; k <= m; ++k) v[static_cast<std::size_t>(k)] = n - f(m - k);
    return OrdinalMap(n, std::move(v));
}

OrdinalMap injection_from_mask(int n, std::uint32_t mask) {
    std::vector<int> v;
    for (int k = 0; k <= n; ++k)
        if (mask & (1u << k)) v.push_back(k);
    if (v.empty()) throw ArgumentError("injection_from_mask: empty image");
    return OrdinalMap(n, std::move(v));
}

OrdinalMap surjection_from_mask(int n, std::uint32_t mask) {
    std::vector<int> v(static_cast<std::size_t>(n) + 1);
    int cur = 0;
    for (int k = 0; k <= n; ++k) {
        if (k > 0 && !(mask & (1u << (k - 1)))) ++cur;
        v[static_cast<std::size_t>(k)] = cur;
    }
    return OrdinalMap(cur, std::move(v));
}

std::vector<GeneratorStep> generator_word(const OrdinalMap& f) {
    auto [epi, mono] = epi_mono_factorize(f);
    std::vector<GeneratorStep> word;
    // Degeneracies sigma^j for collapsed positions, largest applied first.
    int n = epi.source();
    for (int j = epi.source() - 1; j >= 0; --j) {
        if (epi(j) == epi(j + 1)) {
            word.push_back({Generator::degeneracy, n, j});
            --n;
        }
    }
    // Faces delta^i for missed values, smallest applied first.
    const std::uint32_t img = mono.image_mask();
    int cur = mono.source();
    for (int i = 0; i <= mono.target(); ++i) {
        if (!(img & (1u << i))) {
            ++cur;
            word.push_back({Generator::face, cur, i});
        }
    }
    return word;
}

OrdinalMap evaluate_word(int source, const std::vector<GeneratorStep>& word) {
    OrdinalMap acc = OrdinalMap::identity(source);
    for (const auto& step : word) acc = compose(generator(step.kind, step.n, step.i), acc);
    return acc;
}

namespace {

void monotone_rec(int m, int n, std::vector<int>& cur, std::vector<OrdinalMap>& out) {
    if (static_cast<int>(cur.size()) == m + 1) {
        out.emplace_back(n, cur);
        return;
    }
    const int lo = cur.empty() ? 0 : cur.back();
    for (int v = lo; v <= n; ++v) {
        cur.push_back(v);
        monotone_rec(m, n, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<OrdinalMap> all_monotone_maps(int m, int n) {
    std::vector<OrdinalMap> out;
    if (m < 0 || n < 0) return out;
    std::vector<int> cur;
    monotone_rec(m, n, cur, out);
    return out;
}

std::vector<OrdinalMap> all_surjections(int m, int n) {
    std::vector<OrdinalMap> out;
    for (auto& f : all_monotone_maps(m, n))
        if (f.is_surjective()) out.push_back(std::move(f));
    return out;
}

std::vector<OrdinalMap> all_injections(int m, int n) {
    std::vector<OrdinalMap> out;
    for (auto& f : all_monotone_maps(m, n))
        if (f.is_injective()) out.push_back(std::move(f));
    return out;
}

std::vector<int> normalize_order(const std::vector<int>& keys, const std::vector<int>& values) {
    std::vector<int> out;
    out.reserve(values.size());
    for (int v : values) {
        auto it = std::lower_bound(keys.begin(), keys.end(), v);
        if (it == keys.end() || *it != v) throw ArgumentError("normalize_order: value not in the ordered set");
        out.push_back(static_cast<int>(it - keys.begin()));
    }
    return out;
}

}  // namespace nw
