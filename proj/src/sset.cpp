#include "nerveworks/sset.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "nerveworks/error.hpp"

namespace nw {

namespace {

constexpr int kMaxDimension = 30;

int sval(std::uint32_t mask, int v) {
    return v - std::popcount(mask & ((1u << v) - 1u));
}

std::uint32_t mask_of(const int* vals, int len) {
    std::uint32_t m = 0;
    for (int k = 0; k + 1 < len; ++k)
        if (vals[k] == vals[k + 1]) m |= (1u << k);
    return m;
}

/// Removes the bit positions listed in `drop` from `mask`, compressing the rest.
std::uint32_t remove_positions(std::uint32_t mask, std::uint32_t drop) {
    std::uint32_t out = 0;
    int w = 0;
    for (int p = 0; p < 32; ++p) {
        if (drop & (1u << p)) continue;
        if (mask & (1u << p)) out |= (1u << w);
        ++w;
    }
    return out;
}

/// Inserts a set bit at position i (degeneracy s_i applied after the given surjection).
std::uint32_t insert_degeneracy(std::uint32_t mask, int i) {
    const std::uint32_t low = mask & ((1u << i) - 1u);
    const std::uint32_t high = (mask >> i) << (i + 1);
    return low | (1u << i) | high;
}

std::uint32_t reverse_mask(std::uint32_t mask, int n) {
    std::uint32_t out = 0;
    for (int p = 0; p < n; ++p)
        if (mask & (1u << p)) out |= (1u << (n - 1 - p));
    return out;
}

}  // namespace

/// t^*(x) for a surjection t : [n] -> [x.dim] given by its mask.
Simplex degenerate_by(const Simplex& x, std::uint32_t t, int n) {
    if (t == 0) return x;
    std::array<int, 32> v{};
    for (int p = 0; p <= n; ++p) v[static_cast<std::size_t>(p)] = sval(x.degen, sval(t, p));
    return Simplex{n, mask_of(v.data(), n + 1), x.cell};
}

int Simplex::cell_dim() const { return dim - std::popcount(degen); }

struct CellData {
    std::string name;
    std::vector<Simplex> faces;
    std::vector<Simplex> restrictions;  // indexed by vertex mask
};

struct SimplicialSet::Index {
    std::vector<Simplex> all;
    std::unordered_map<std::vector<Simplex>, std::vector<Simplex>, SimplexVectorHash> by_boundary;
};

struct SimplicialSet::Data {
    std::optional<int> truncation;
    std::vector<std::vector<CellData>> cells;
    std::unordered_map<std::string, std::vector<Simplex>> by_name;
    mutable std::mutex mu;
    mutable std::map<int, std::unique_ptr<Index>> indexes;

    const CellData& at(int k, int idx) const {
        return cells[static_cast<std::size_t>(k)][static_cast<std::size_t>(idx)];
    }

    Simplex apply_values(const Simplex& x, const int* a, int m) const {
        std::array<int, 32> c{};
        std::uint32_t S = 0;
        for (int k = 0; k <= m; ++k) {
            c[static_cast<std::size_t>(k)] = sval(x.degen, a[k]);
            S |= (1u << c[static_cast<std::size_t>(k)]);
        }
        const Simplex& r = at(x.cell_dim(), x.cell).restrictions[S];
        std::array<int, 32> f{};
        for (int k = 0; k <= m; ++k) {
            const int e = std::popcount(S & ((1u << c[static_cast<std::size_t>(k)]) - 1u));
            f[static_cast<std::size_t>(k)] = sval(r.degen, e);
        }
        return Simplex{m, mask_of(f.data(), m + 1), r.cell};
    }

    void build_restrictions(int k, int idx) {
        CellData& cd = cells[static_cast<std::size_t>(k)][static_cast<std::size_t>(idx)];
        const std::uint32_t full = (1u << (k + 1)) - 1u;
        cd.restrictions.assign(static_cast<std::size_t>(full) + 1, Simplex{});
        cd.restrictions[full] = Simplex{k, 0, idx};
        std::array<int, 32> vals{};
        for (std::uint32_t S = 1; S < full; ++S) {
            int i = k;
            while (S & (1u << i)) --i;
            const Simplex& face = cd.faces[static_cast<std::size_t>(i)];
            // Image of S inside [k-1] after deleting vertex i.
            int m = -1;
            for (int p = 0; p <= k; ++p) {
                if (!(S & (1u << p))) continue;
                vals[static_cast<std::size_t>(++m)] = p < i ? p : p - 1;
            }
            cd.restrictions[S] = apply_values(face, vals.data(), m);
        }
    }
};

SimplicialSet::SimplicialSet() : data_(std::make_shared<Data>()) {}

std::optional<int> SimplicialSet::truncation() const { return data_->truncation; }

bool SimplicialSet::known_through(int n) const { return !data_->truncation || n <= *data_->truncation; }

int SimplicialSet::top_dimension() const {
    for (int k = static_cast<int>(data_->cells.size()) - 1; k >= 0; --k)
        if (!data_->cells[static_cast<std::size_t>(k)].empty()) return k;
    return -1;
}

int SimplicialSet::cell_count(int k) const {
    if (k < 0 || k >= static_cast<int>(data_->cells.size())) return 0;
    return static_cast<int>(data_->cells[static_cast<std::size_t>(k)].size());
}

std::size_t SimplicialSet::total_cells() const {
    std::size_t n = 0;
    for (const auto& level : data_->cells) n += level.size();
    return n;
}

const std::string& SimplicialSet::name(int k, int idx) const { return data_->at(k, idx).name; }

std::optional<Simplex> SimplicialSet::find(int k, const std::string& name) const {
    auto it = data_->by_name.find(name);
    if (it == data_->by_name.end()) return std::nullopt;
    for (const auto& s : it->second)
        if (s.dim == k) return s;
    return std::nullopt;
}

std::optional<Simplex> SimplicialSet::find(const std::string& name) const {
    auto it = data_->by_name.find(name);
    if (it == data_->by_name.end()) return std::nullopt;
    return it->second.front();
}

const std::vector<Simplex>& SimplicialSet::faces(int k, int idx) const { return data_->at(k, idx).faces; }

Simplex SimplicialSet::apply(const OrdinalMap& a, const Simplex& x) const {
    if (a.target() != x.dim)
        throw ArgumentError("apply: map " + a.to_string() + " does not land in dimension " + std::to_string(x.dim));
    return data_->apply_values(x, a.values().data(), a.source());
}

Simplex SimplicialSet::face(const Simplex& x, int i) const {
    if (x.dim < 1 || i < 0 || i > x.dim) throw ArgumentError("face: index out of range");
    std::array<int, 32> v{};
    for (int k = 0; k < x.dim; ++k) v[static_cast<std::size_t>(k)] = k < i ? k : k + 1;
    return data_->apply_values(x, v.data(), x.dim - 1);
}

Simplex SimplicialSet::degeneracy(const Simplex& x, int i) const {
    if (i < 0 || i > x.dim) throw ArgumentError("degeneracy: index out of range");
    return Simplex{x.dim + 1, insert_degeneracy(x.degen, i), x.cell};
}

Simplex SimplicialSet::restrict_to(const Simplex& x, std::uint32_t mask) const {
    std::array<int, 32> v{};
    int m = -1;
    for (int p = 0; p <= x.dim; ++p)
        if (mask & (1u << p)) v[static_cast<std::size_t>(++m)] = p;
    if (m < 0) throw ArgumentError("restrict_to: empty vertex set");
    return data_->apply_values(x, v.data(), m);
}

int SimplicialSet::vertex(const Simplex& x, int k) const {
    const int v = k;
    return data_->apply_values(x, &v, 0).cell;
}

std::vector<int> SimplicialSet::vertices(const Simplex& x) const {
    std::vector<int> out;
    for (int k = 0; k <= x.dim; ++k) out.push_back(vertex(x, k));
    return out;
}

Simplex SimplicialSet::constant(int vertex, int n) {
    return Simplex{n, n > 0 ? (1u << n) - 1u : 0u, vertex};
}

const SimplicialSet::Index& SimplicialSet::index(int n) const {
    if (n < 0 || n > kMaxDimension) throw ArgumentError("simplices: dimension out of range");
    if (!known_through(n))
        throw ArgumentError("simplices: dimension " + std::to_string(n) + " lies above the truncation " +
                            std::to_string(*data_->truncation));
    std::lock_guard<std::mutex> lock(data_->mu);
    auto& slot = data_->indexes[n];
    if (slot) return *slot;
    auto idx = std::make_unique<Index>();
    const int top = std::min(n, top_dimension());
    for (int c = top; c >= 0; --c) {
        const int ncells = cell_count(c);
        if (ncells == 0) continue;
        const int drop = n - c;
        for (std::uint32_t mask = 0; mask < (1u << n) || (n == 0 && mask == 0); ++mask) {
            if (std::popcount(mask) != drop) {
                if (n == 0) break;
                continue;
            }
            for (int cell = 0; cell < ncells; ++cell) idx->all.push_back(Simplex{n, mask, cell});
            if (n == 0) break;
        }
    }
    if (n > 0) {
        for (const auto& s : idx->all) idx->by_boundary[boundary(s)].push_back(s);
    }
    slot = std::move(idx);
    return *slot;
}

const std::vector<Simplex>& SimplicialSet::simplices(int n) const { return index(n).all; }

const std::vector<Simplex>& SimplicialSet::with_boundary(int n, const std::vector<Simplex>& bd) const {
    const Index& idx = index(n);
    if (n == 0) return idx.all;
    static const std::vector<Simplex> none;
    auto it = idx.by_boundary.find(bd);
    return it == idx.by_boundary.end() ? none : it->second;
}

std::vector<Simplex> SimplicialSet::boundary(const Simplex& x) const {
    std::vector<Simplex> out;
    out.reserve(static_cast<std::size_t>(x.dim) + 1);
    for (int i = 0; i <= x.dim; ++i) out.push_back(face(x, i));
    return out;
}

std::string SimplicialSet::describe(const Simplex& x) const {
    const std::string& nm = name(x.cell_dim(), x.cell);
    if (!x.degenerate()) return nm;
    std::string s = "s[";
    const auto vals = x.degeneracy().values();
    for (std::size_t k = 0; k < vals.size(); ++k) s += (k ? "," : "") + std::to_string(vals[k]);
    return s + "](" + nm + ")";
}

bool operator==(const SimplicialSet& a, const SimplicialSet& b) {
    if (a.data_ == b.data_) return true;
    if (a.truncation() != b.truncation()) return false;
    const int top = std::max(a.top_dimension(), b.top_dimension());
    for (int k = 0; k <= top; ++k) {
        if (a.cell_count(k) != b.cell_count(k)) return false;
        for (int i = 0; i < a.cell_count(k); ++i) {
            const auto& ca = a.data_->at(k, i);
            const auto& cb = b.data_->at(k, i);
            if (ca.name != cb.name || ca.faces != cb.faces) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------

SimplicialSet::Builder::Builder(std::optional<int> truncation) : truncation_(truncation) {
    if (truncation_ && *truncation_ < 0) throw ArgumentError("negative truncation");
}

int SimplicialSet::Builder::add_cell(int k, std::string name, std::vector<Simplex> faces) {
    if (k < 0 || k > kMaxDimension) throw ArgumentError("add_cell: dimension out of range");
    if (truncation_ && k > *truncation_)
        throw ArgumentError("add_cell: cell '" + name + "' lies above the truncation");
    const std::size_t expected = k == 0 ? 0 : static_cast<std::size_t>(k) + 1;
    if (faces.size() != expected)
        throw ArgumentError("add_cell: cell '" + name + "' needs " + std::to_string(expected) + " faces");
    for (const auto& f : faces) {
        if (f.dim != k - 1) throw ArgumentError("add_cell: face of '" + name + "' has the wrong dimension");
        if ((f.degen >> std::max(f.dim, 0)) != 0u)
            throw ArgumentError("add_cell: face of '" + name + "' has an invalid degeneracy");
        const int cd = f.cell_dim();
        if (cd < 0 || f.cell < 0 || cd >= static_cast<int>(cells_.size()) ||
            f.cell >= static_cast<int>(cells_[static_cast<std::size_t>(cd)].size()))
            throw ArgumentError("add_cell: face of '" + name + "' refers to a missing cell");
    }
    if (cells_.size() <= static_cast<std::size_t>(k)) cells_.resize(static_cast<std::size_t>(k) + 1);
    cells_[static_cast<std::size_t>(k)].emplace_back(std::move(name), std::move(faces));
    return static_cast<int>(cells_[static_cast<std::size_t>(k)].size()) - 1;
}

int SimplicialSet::Builder::cell_count(int k) const {
    return k < static_cast<int>(cells_.size()) ? static_cast<int>(cells_[static_cast<std::size_t>(k)].size()) : 0;
}

SimplicialSet SimplicialSet::Builder::build() const {
    auto d = std::make_shared<Data>();
    d->truncation = truncation_;
    d->cells.resize(cells_.size());
    for (std::size_t k = 0; k < cells_.size(); ++k) {
        for (std::size_t i = 0; i < cells_[k].size(); ++i) {
            CellData cd;
            cd.name = cells_[k][i].first;
            cd.faces = cells_[k][i].second;
            d->cells[k].push_back(std::move(cd));
            auto& same = d->by_name[d->cells[k].back().name];
            if (!same.empty() && same.back().dim == static_cast<int>(k))
                throw ArgumentError("duplicate cell name '" + d->cells[k].back().name + "'");
            same.push_back(Simplex{static_cast<int>(k), 0, static_cast<int>(i)});
        }
    }
    for (std::size_t k = 0; k < d->cells.size(); ++k) {
        for (std::size_t i = 0; i < d->cells[k].size(); ++i) {
            const int kk = static_cast<int>(k);
            if (kk >= 2) {
                // d_i d_j = d_{j-1} d_i for i < j, using faces of lower cells (already complete).
                const auto& faces = d->cells[k][i].faces;
                std::array<int, 32> v{};
                auto face_of = [&](const Simplex& x, int j) {
                    for (int p = 0; p < x.dim; ++p) v[static_cast<std::size_t>(p)] = p < j ? p : p + 1;
                    return d->apply_values(x, v.data(), x.dim - 1);
                };
                for (int a = 0; a <= kk; ++a)
                    for (int b = a + 1; b <= kk; ++b)
                        if (face_of(faces[static_cast<std::size_t>(b)], a) !=
                            face_of(faces[static_cast<std::size_t>(a)], b - 1))
                            throw ArgumentError("simplicial identity d_" + std::to_string(a) + " d_" +
                                                std::to_string(b) + " fails on cell '" + d->cells[k][i].name + "'");
            }
            d->build_restrictions(kk, static_cast<int>(i));
        }
    }
    return SimplicialSet(std::move(d));
}

// ---------------------------------------------------------------------------

SimplicialMap::SimplicialMap(SimplicialSet source, SimplicialSet target, std::vector<std::vector<Simplex>> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    images_.resize(static_cast<std::size_t>(std::max(source_.top_dimension() + 1, 0)));
    for (int k = 0; k <= source_.top_dimension(); ++k) {
        if (static_cast<int>(images_[static_cast<std::size_t>(k)].size()) != source_.cell_count(k))
            throw ArgumentError("SimplicialMap: wrong number of images in dimension " + std::to_string(k));
        for (int i = 0; i < source_.cell_count(k); ++i) {
            const Simplex& y = images_[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
            if (y.dim != k || y.cell_dim() < 0 || y.cell >= target_.cell_count(y.cell_dim()))
                throw ArgumentError("SimplicialMap: invalid image for cell '" + source_.name(k, i) + "'");
            if (k == 0) continue;
            const auto& faces = source_.faces(k, i);
            for (int j = 0; j <= k; ++j) {
                if ((*this)(faces[static_cast<std::size_t>(j)]) != target_.face(y, j))
                    throw ArgumentError("SimplicialMap: does not commute with d_" + std::to_string(j) + " on '" +
                                        source_.name(k, i) + "'");
            }
        }
    }
}

const Simplex& SimplicialMap::image(int k, int idx) const {
    return images_[static_cast<std::size_t>(k)][static_cast<std::size_t>(idx)];
}

Simplex SimplicialMap::operator()(const Simplex& x) const {
    return degenerate_by(image(x.cell_dim(), x.cell), x.degen, x.dim);
}

bool SimplicialMap::is_injective() const {
    std::unordered_set<Simplex, SimplexHash> seen;
    for (const auto& level : images_)
        for (const auto& y : level) {
            if (y.degenerate()) return false;
            if (!seen.insert(y).second) return false;
        }
    return true;
}

SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f) {
    std::vector<std::vector<Simplex>> images = f.images();
    for (auto& level : images)
        for (auto& y : level) y = g(y);
    return SimplicialMap(SimplicialMap::Unchecked{}, f.source(), g.target(), std::move(images));
}

SimplicialMap identity_map(const SimplicialSet& X) {
    std::vector<std::vector<Simplex>> images(static_cast<std::size_t>(X.top_dimension() + 1));
    for (int k = 0; k <= X.top_dimension(); ++k)
        for (int i = 0; i < X.cell_count(k); ++i) images[static_cast<std::size_t>(k)].push_back(SimplicialSet::cell(k, i));
    return SimplicialMap(SimplicialMap::Unchecked{}, X, X, std::move(images));
}

SimplicialMap map_from_empty(const SimplicialSet& X) {
    return SimplicialMap(SimplicialMap::Unchecked{}, empty_simplicial_set(), X, {});
}

// ---------------------------------------------------------------------------

namespace {

std::string subset_name(int n, std::uint32_t mask) {
    std::string s;
    for (int p = 0; p <= n; ++p) {
        if (!(mask & (1u << p))) continue;
        if (n >= 10 && !s.empty()) s += ",";
        s += std::to_string(p);
    }
    return s;
}

}  // namespace

SimplicialSet simplex_subcomplex(int n, const std::function<bool(std::uint32_t)>& keep) {
    if (n < 0 || n > 20) throw ArgumentError("simplex_subcomplex: dimension out of range");
    SimplicialSet::Builder b;
    std::unordered_map<std::uint32_t, int> index;
    const std::uint32_t full = (1u << (n + 1)) - 1u;
    for (int k = 0; k <= n; ++k) {
        for (std::uint32_t S = 1; S <= full; ++S) {
            if (std::popcount(S) != k + 1 || !keep(S)) continue;
            std::vector<Simplex> faces;
            if (k > 0) {
                int removed = 0;
                for (int p = 0; p <= n; ++p) {
                    if (!(S & (1u << p))) continue;
                    const std::uint32_t F = S & ~(1u << p);
                    auto it = index.find(F);
                    if (it == index.end())
                        throw ArgumentError("simplex_subcomplex: vertex family not closed under faces");
                    faces.push_back(Simplex{k - 1, 0, it->second});
                    ++removed;
                }
            }
            index[S] = b.add_cell(k, subset_name(n, S), std::move(faces));
        }
    }
    return b.build();
}

SimplicialSet standard_simplex(int n) { return standard_object(StandardKind::simplex, n); }

SimplicialSet empty_simplicial_set() { return SimplicialSet::Builder().build(); }

SimplicialSet standard_object(StandardKind kind, int n, int k) {
    if (n < 0) throw ArgumentError("standard_object: negative dimension");
    const std::uint32_t full = (1u << (n + 1)) - 1u;
    switch (kind) {
        case StandardKind::simplex:
            return simplex_subcomplex(n, [](std::uint32_t) { return true; });
        case StandardKind::boundary:
            return simplex_subcomplex(n, [full](std::uint32_t S) { return S != full; });
        case StandardKind::horn: {
            if (n < 1 || k < 0 || k > n)
                throw ArgumentError("horn(" + std::to_string(n) + "," + std::to_string(k) + "): index out of range");
            const std::uint32_t missing = full & ~(1u << k);
            return simplex_subcomplex(n, [full, missing](std::uint32_t S) { return S != full && S != missing; });
        }
        case StandardKind::spine:
            return simplex_subcomplex(n, [](std::uint32_t S) {
                if (std::popcount(S) == 1) return true;
                if (std::popcount(S) != 2) return false;
                const int lo = std::countr_zero(S);
                return (S >> lo) == 3u;
            });
    }
    throw ArgumentError("standard_object: unknown kind");
}

SimplicialMap standard_inclusion(const SimplicialSet& sub, int n) {
    const SimplicialSet full = standard_simplex(n);
    std::vector<std::vector<Simplex>> images(static_cast<std::size_t>(sub.top_dimension() + 1));
    for (int k = 0; k <= sub.top_dimension(); ++k)
        for (int i = 0; i < sub.cell_count(k); ++i) {
            auto hit = full.find(sub.name(k, i));
            if (!hit) throw ArgumentError("standard_inclusion: cell '" + sub.name(k, i) + "' not in the simplex");
            images[static_cast<std::size_t>(k)].push_back(*hit);
        }
    return SimplicialMap(sub, full, std::move(images));
}

// ---------------------------------------------------------------------------

SimplicialSet product(const SimplicialSet& X, const SimplicialSet& Y, std::optional<int> truncation) {
    int top;
    std::optional<int> out_trunc;
    if (truncation) {
        top = *truncation;
        out_trunc = truncation;
        if (!X.known_through(top) || !Y.known_through(top))
            throw ArgumentError("product: requested truncation exceeds an input truncation");
    } else if (!X.truncation() && !Y.truncation()) {
        top = std::max(X.top_dimension(), 0) + std::max(Y.top_dimension(), 0);
    } else {
        top = std::min(X.truncation().value_or(1 << 20), Y.truncation().value_or(1 << 20));
        out_trunc = top;
    }
    if (top > kMaxDimension) throw ArgumentError("product: dimension too large");

    using Pair = std::pair<Simplex, Simplex>;
    struct PairHash {
        std::size_t operator()(const Pair& p) const noexcept {
            return SimplexHash{}(p.first) * 31u ^ SimplexHash{}(p.second);
        }
    };
    std::vector<std::unordered_map<Pair, int, PairHash>> index(static_cast<std::size_t>(top) + 1);
    SimplicialSet::Builder b(out_trunc);
    auto lookup = [&](const Simplex& a, const Simplex& c) {
        const std::uint32_t common = a.degen & c.degen;
        const int m = std::popcount(common);
        const Simplex a2{a.dim - m, remove_positions(a.degen, common), a.cell};
        const Simplex c2{c.dim - m, remove_positions(c.degen, common), c.cell};
        auto it = index[static_cast<std::size_t>(a2.dim)].find({a2, c2});
        if (it == index[static_cast<std::size_t>(a2.dim)].end()) throw InconsistencyError("product: missing cell");
        return Simplex{a.dim, common, it->second};
    };
    for (int n = 0; n <= top; ++n) {
        for (int p = 0; p <= std::min(n, X.top_dimension()); ++p) {
            for (int q = std::max(0, n - p); q <= std::min(n, Y.top_dimension()); ++q) {
                for (std::uint32_t ma = 0; ma < (1u << n) || (n == 0 && ma == 0); ++ma) {
                    if (std::popcount(ma) != n - p) {
                        if (n == 0) break;
                        continue;
                    }
                    for (std::uint32_t mb = 0; mb < (1u << n) || (n == 0 && mb == 0); ++mb) {
                        if (std::popcount(mb) != n - q || (ma & mb)) {
                            if (n == 0) break;
                            continue;
                        }
                        for (int x = 0; x < X.cell_count(p); ++x) {
                            for (int y = 0; y < Y.cell_count(q); ++y) {
                                const Simplex a{n, ma, x};
                                const Simplex c{n, mb, y};
                                std::vector<Simplex> faces;
                                for (int i = 0; n > 0 && i <= n; ++i) faces.push_back(lookup(X.face(a, i), Y.face(c, i)));
                                const int id = b.add_cell(n, "(" + X.describe(a) + "," + Y.describe(c) + ")", std::move(faces));
                                index[static_cast<std::size_t>(n)][{a, c}] = id;
                            }
                        }
                        if (n == 0) break;
                    }
                    if (n == 0) break;
                }
            }
        }
    }
    return b.build();
}

SimplicialSet product(const std::vector<SimplicialSet>& factors, std::optional<int> truncation) {
    if (factors.empty()) return standard_simplex(0);
    SimplicialSet acc = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) acc = product(acc, factors[i], truncation);
    if (factors.size() == 1 && truncation) acc = product(acc, standard_simplex(0), truncation);
    return acc;
}

namespace {

std::string fresh_name(std::unordered_set<std::string>& used, int k, std::string name) {
    while (!used.insert(std::to_string(k) + ":" + name).second) name += "'";
    return name;
}

std::optional<int> min_truncation(std::optional<int> a, std::optional<int> b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

}  // namespace

SimplicialSet disjoint_union(const SimplicialSet& X, const SimplicialSet& Y) {
    SimplicialSet::Builder b(min_truncation(X.truncation(), Y.truncation()));
    std::unordered_set<std::string> used;
    const int top = std::max(X.top_dimension(), Y.top_dimension());
    for (int k = 0; k <= top; ++k) {
        for (int i = 0; i < X.cell_count(k); ++i)
            b.add_cell(k, fresh_name(used, k, X.name(k, i)), k ? X.faces(k, i) : std::vector<Simplex>{});
        for (int i = 0; i < Y.cell_count(k); ++i) {
            std::vector<Simplex> faces;
            if (k > 0)
                for (Simplex f : Y.faces(k, i)) {
                    f.cell += X.cell_count(f.cell_dim());
                    faces.push_back(f);
                }
            b.add_cell(k, fresh_name(used, k, Y.name(k, i)), std::move(faces));
        }
    }
    return b.build();
}

Pushout pushout(const SimplicialMap& f, const SimplicialMap& g) {
    if (!(f.source() == g.source())) throw ArgumentError("pushout: legs have different sources");
    if (!f.is_injective()) {
        if (!g.is_injective())
            throw UnsupportedInput("pushout: neither leg is injective (general coequalizers are not supported)");
        Pushout swapped = pushout(g, f);
        return {swapped.object, swapped.from_second, swapped.from_first};
    }
    // f : A -> X injective. P = Y plus the cells of X outside f(A).
    const SimplicialSet& A = f.source();
    const SimplicialSet& X = f.target();
    const SimplicialSet& Y = g.target();
    SimplicialSet::Builder b(min_truncation(X.truncation(), Y.truncation()));
    std::unordered_set<std::string> used;
    const int top = std::max(X.top_dimension(), Y.top_dimension());

    // Where each X cell goes in P, as a simplex of P.
    std::vector<std::vector<Simplex>> x_image(static_cast<std::size_t>(std::max(X.top_dimension() + 1, 0)));
    for (int k = 0; k <= X.top_dimension(); ++k)
        x_image[static_cast<std::size_t>(k)].assign(static_cast<std::size_t>(X.cell_count(k)), Simplex{-1, 0, -1});
    for (int k = 0; k <= A.top_dimension(); ++k)
        for (int i = 0; i < A.cell_count(k); ++i) {
            const Simplex& fx = f.image(k, i);
            x_image[static_cast<std::size_t>(k)][static_cast<std::size_t>(fx.cell)] = g.image(k, i);
        }
    auto map_x = [&](const Simplex& s) {
        return degenerate_by(x_image[static_cast<std::size_t>(s.cell_dim())][static_cast<std::size_t>(s.cell)], s.degen,
                             s.dim);
    };
    for (int k = 0; k <= top; ++k) {
        for (int i = 0; i < Y.cell_count(k); ++i)
            b.add_cell(k, fresh_name(used, k, Y.name(k, i)), k ? Y.faces(k, i) : std::vector<Simplex>{});
        for (int i = 0; i < X.cell_count(k); ++i) {
            auto& slot = x_image[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
            if (slot.dim >= 0) continue;
            std::vector<Simplex> faces;
            if (k > 0)
                for (const Simplex& fc : X.faces(k, i)) faces.push_back(map_x(fc));
            const int id = b.add_cell(k, fresh_name(used, k, X.name(k, i)), std::move(faces));
            slot = Simplex{k, 0, id};
        }
    }
    SimplicialSet P = b.build();
    std::vector<std::vector<Simplex>> y_images(static_cast<std::size_t>(std::max(Y.top_dimension() + 1, 0)));
    for (int k = 0; k <= Y.top_dimension(); ++k)
        for (int i = 0; i < Y.cell_count(k); ++i) y_images[static_cast<std::size_t>(k)].push_back(Simplex{k, 0, i});
    return {P, SimplicialMap(X, P, x_image), SimplicialMap(Y, P, std::move(y_images))};
}

SimplicialSet skeleton(const SimplicialSet& X, int n) {
    if (n < 0) throw ArgumentError("skeleton: negative dimension");
    if (!X.known_through(n)) throw ArgumentError("skeleton: dimension above the truncation");
    SimplicialSet::Builder b;
    for (int k = 0; k <= std::min(n, X.top_dimension()); ++k)
        for (int i = 0; i < X.cell_count(k); ++i) b.add_cell(k, X.name(k, i), k ? X.faces(k, i) : std::vector<Simplex>{});
    return b.build();
}

Simplex opposite_simplex(const Simplex& x) { return Simplex{x.dim, reverse_mask(x.degen, x.dim), x.cell}; }

SimplicialSet opposite(const SimplicialSet& X) {
    SimplicialSet::Builder b(X.truncation());
    for (int k = 0; k <= X.top_dimension(); ++k)
        for (int i = 0; i < X.cell_count(k); ++i) {
            std::vector<Simplex> faces;
            if (k > 0) {
                const auto& f = X.faces(k, i);
                for (int j = 0; j <= k; ++j) faces.push_back(opposite_simplex(f[static_cast<std::size_t>(k - j)]));
            }
            b.add_cell(k, X.name(k, i), std::move(faces));
        }
    return b.build();
}

Subobject subobject(const SimplicialSet& X, const std::vector<std::vector<bool>>& keep) {
    SimplicialSet::Builder b(X.truncation());
    std::vector<std::vector<int>> renum(static_cast<std::size_t>(std::max(X.top_dimension() + 1, 0)));
    std::vector<std::vector<Simplex>> images(renum.size());
    for (int k = 0; k <= X.top_dimension(); ++k) {
        renum[static_cast<std::size_t>(k)].assign(static_cast<std::size_t>(X.cell_count(k)), -1);
        for (int i = 0; i < X.cell_count(k); ++i) {
            const bool kept = static_cast<std::size_t>(k) < keep.size() &&
                              static_cast<std::size_t>(i) < keep[static_cast<std::size_t>(k)].size() &&
                              keep[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
            if (!kept) continue;
            std::vector<Simplex> faces;
            if (k > 0)
                for (Simplex f : X.faces(k, i)) {
                    const int r = renum[static_cast<std::size_t>(f.cell_dim())][static_cast<std::size_t>(f.cell)];
                    if (r < 0)
                        throw ArgumentError("subobject: cell '" + X.name(k, i) + "' has a face outside the subset");
                    f.cell = r;
                    faces.push_back(f);
                }
            renum[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] = b.add_cell(k, X.name(k, i), std::move(faces));
            images[static_cast<std::size_t>(k)].push_back(Simplex{k, 0, i});
        }
    }
    SimplicialSet S = b.build();
    images.resize(static_cast<std::size_t>(std::max(S.top_dimension() + 1, 0)));
    return {S, SimplicialMap(SimplicialMap::Unchecked{}, S, X, std::move(images))};
}

Subobject generated_subobject(const SimplicialSet& X, const std::vector<Simplex>& generators) {
    std::vector<std::vector<bool>> keep(static_cast<std::size_t>(std::max(X.top_dimension() + 1, 0)));
    for (int k = 0; k <= X.top_dimension(); ++k) keep[static_cast<std::size_t>(k)].assign(static_cast<std::size_t>(X.cell_count(k)), false);
    std::vector<Simplex> stack;
    for (const auto& g : generators) stack.push_back(Simplex{g.cell_dim(), 0, g.cell});
    while (!stack.empty()) {
        Simplex c = stack.back();
        stack.pop_back();
        auto ref = keep[static_cast<std::size_t>(c.dim)][static_cast<std::size_t>(c.cell)];
        if (ref) continue;
        keep[static_cast<std::size_t>(c.dim)][static_cast<std::size_t>(c.cell)] = true;
        if (c.dim > 0)
            for (const auto& f : X.faces(c.dim, c.cell)) stack.push_back(Simplex{f.cell_dim(), 0, f.cell});
    }
    return subobject(X, keep);
}

// ---------------------------------------------------------------------------

namespace {

struct ExtensionSearch {
    const SimplicialSet& B;
    const SimplicialSet& X;
    std::vector<std::vector<Simplex>> assigned;
    std::vector<std::pair<int, int>> todo;
    const std::function<bool(const std::vector<std::vector<Simplex>>&)>& visit;
    std::optional<std::mt19937_64> rng;
    bool stopped = false;

    Simplex image_of(const Simplex& s) const {
        return degenerate_by(assigned[static_cast<std::size_t>(s.cell_dim())][static_cast<std::size_t>(s.cell)], s.degen,
                             s.dim);
    }

    void run(std::size_t t) {
        if (stopped) return;
        if (t == todo.size()) {
            if (!visit(assigned)) stopped = true;
            return;
        }
        const auto [k, idx] = todo[t];
        std::vector<Simplex> bd;
        if (k > 0)
            for (const auto& f : B.faces(k, idx)) bd.push_back(image_of(f));
        const auto& cands = X.with_boundary(k, bd);
        if (rng) {
            std::vector<Simplex> shuffled = cands;
            std::shuffle(shuffled.begin(), shuffled.end(), *rng);
            for (const auto& c : shuffled) {
                assigned[static_cast<std::size_t>(k)][static_cast<std::size_t>(idx)] = c;
                run(t + 1);
                if (stopped) return;
            }
        } else {
            for (const auto& c : cands) {
                assigned[static_cast<std::size_t>(k)][static_cast<std::size_t>(idx)] = c;
                run(t + 1);
                if (stopped) return;
            }
        }
    }
};

}  // namespace

void for_each_extension(const SimplicialMap& i, const SimplicialMap& f,
                        const std::function<bool(const std::vector<std::vector<Simplex>>&)>& visit,
                        std::optional<std::uint64_t> shuffle_seed) {
    if (!(i.source() == f.source())) throw ArgumentError("lift_extensions: i and f have different sources");
    if (!i.is_injective()) throw ArgumentError("lift_extensions: i is not injective");
    const SimplicialSet& A = i.source();
    const SimplicialSet& B = i.target();
    const SimplicialSet& X = f.target();
    ExtensionSearch s{B, X, {}, {}, visit, std::nullopt};
    if (shuffle_seed) s.rng.emplace(*shuffle_seed);
    s.assigned.resize(static_cast<std::size_t>(std::max(B.top_dimension() + 1, 0)));
    std::vector<std::vector<bool>> fixed(s.assigned.size());
    for (int k = 0; k <= B.top_dimension(); ++k) {
        s.assigned[static_cast<std::size_t>(k)].assign(static_cast<std::size_t>(B.cell_count(k)), Simplex{});
        fixed[static_cast<std::size_t>(k)].assign(static_cast<std::size_t>(B.cell_count(k)), false);
    }
    for (int k = 0; k <= A.top_dimension(); ++k)
        for (int a = 0; a < A.cell_count(k); ++a) {
            const Simplex& b = i.image(k, a);
            s.assigned[static_cast<std::size_t>(k)][static_cast<std::size_t>(b.cell)] = f.image(k, a);
            fixed[static_cast<std::size_t>(k)][static_cast<std::size_t>(b.cell)] = true;
        }
    for (int k = 0; k <= B.top_dimension(); ++k)
        for (int b = 0; b < B.cell_count(k); ++b)
            if (!fixed[static_cast<std::size_t>(k)][static_cast<std::size_t>(b)]) {
                if (!X.known_through(k))
                    throw ArgumentError("lift_extensions: target truncation " + std::to_string(*X.truncation()) +
                                        " is below the needed dimension " + std::to_string(k));
                s.todo.emplace_back(k, b);
            }
    s.run(0);
}

std::vector<SimplicialMap> lift_extensions(const SimplicialMap& i, const SimplicialMap& f, const ExtensionOptions& options) {
    if (options.limit == 0) throw ArgumentError("lift_extensions: limit must be positive");
    std::vector<SimplicialMap> out;
    for_each_extension(
        i, f,
        [&](const std::vector<std::vector<Simplex>>& images) {
            out.emplace_back(SimplicialMap::Unchecked{}, i.target(), f.target(), images);
            return out.size() < options.limit;
        },
        options.shuffle_seed);
    return out;
}

std::vector<SimplicialMap> lift_extensions(const SimplicialMap& i, const SimplicialMap& f, std::size_t limit) {
    return lift_extensions(i, f, ExtensionOptions{limit, std::nullopt});
}

std::size_t count_extensions(const SimplicialMap& i, const SimplicialMap& f, std::size_t cap) {
    std::size_t n = 0;
    for_each_extension(i, f, [&](const std::vector<std::vector<Simplex>>&) { return ++n < cap; });
    return n;
}

std::vector<SimplicialMap> all_maps(const SimplicialSet& B, const SimplicialSet& X, std::size_t limit) {
    return lift_extensions(map_from_empty(B), map_from_empty(X), limit);
}

bool is_isomorphism(const SimplicialMap& f) {
    const SimplicialSet& S = f.source();
    const SimplicialSet& T = f.target();
    if (S.truncation() != T.truncation()) return false;
    if (S.top_dimension() != T.top_dimension()) return false;
    for (int k = 0; k <= S.top_dimension(); ++k)
        if (S.cell_count(k) != T.cell_count(k)) return false;
    return f.is_injective();
}

std::optional<SimplicialMap> find_isomorphism(const SimplicialSet& X, const SimplicialSet& Y) {
    if (X.truncation() != Y.truncation() || X.top_dimension() != Y.top_dimension()) return std::nullopt;
    for (int k = 0; k <= X.top_dimension(); ++k)
        if (X.cell_count(k) != Y.cell_count(k)) return std::nullopt;
    const int top = X.top_dimension();
    std::vector<std::vector<Simplex>> assigned(static_cast<std::size_t>(top + 1));
    std::vector<std::vector<bool>> used(static_cast<std::size_t>(top + 1));
    std::vector<std::pair<int, int>> order;
    for (int k = 0; k <= top; ++k) {
        assigned[static_cast<std::size_t>(k)].assign(static_cast<std::size_t>(X.cell_count(k)), Simplex{});
        used[static_cast<std::size_t>(k)].assign(static_cast<std::size_t>(Y.cell_count(k)), false);
        for (int i = 0; i < X.cell_count(k); ++i) order.emplace_back(k, i);
    }
    auto img = [&](const Simplex& s) {
        return degenerate_by(assigned[static_cast<std::size_t>(s.cell_dim())][static_cast<std::size_t>(s.cell)], s.degen,
                             s.dim);
    };
    std::function<bool(std::size_t)> rec = [&](std::size_t t) -> bool {
        if (t == order.size()) return true;
        const auto [k, i] = order[t];
        std::vector<Simplex> bd;
        if (k > 0)
            for (const auto& fc : X.faces(k, i)) bd.push_back(img(fc));
        for (int c = 0; c < Y.cell_count(k); ++c) {
            if (used[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)]) continue;
            if (k > 0 && Y.faces(k, c) != bd) continue;
            used[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)] = true;
            assigned[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] = Simplex{k, 0, c};
            if (rec(t + 1)) return true;
            used[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)] = false;
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;
    return SimplicialMap(X, Y, std::move(assigned));
}

// ---------------------------------------------------------------------------

ExplicitSimplicialSet expand(const SimplicialSet& X, int top) {
    if (!X.known_through(top)) throw ArgumentError("expand: dimension above the truncation");
    ExplicitSimplicialSet E;
    E.top = top;
    std::vector<std::unordered_map<Simplex, std::size_t, SimplexHash>> pos(static_cast<std::size_t>(top) + 1);
    for (int n = 0; n <= top; ++n) {
        const auto& all = X.simplices(n);
        E.sizes.push_back(all.size());
        E.names.emplace_back();
        for (std::size_t j = 0; j < all.size(); ++j) {
            pos[static_cast<std::size_t>(n)][all[j]] = j;
            E.names.back().push_back(X.describe(all[j]));
        }
    }
    E.faces.resize(static_cast<std::size_t>(top) + 1);
    E.degeneracies.resize(static_cast<std::size_t>(top) + 1);
    for (int n = 0; n <= top; ++n) {
        const auto& all = X.simplices(n);
        for (const auto& x : all) {
            std::vector<std::size_t> fs, ds;
            for (int i = 0; n > 0 && i <= n; ++i) fs.push_back(pos[static_cast<std::size_t>(n - 1)].at(X.face(x, i)));
            for (int i = 0; n < top && i <= n; ++i)
                ds.push_back(pos[static_cast<std::size_t>(n + 1)].at(X.degeneracy(x, i)));
            E.faces[static_cast<std::size_t>(n)].push_back(std::move(fs));
            E.degeneracies[static_cast<std::size_t>(n)].push_back(std::move(ds));
        }
    }
    return E;
}

SimplicialSet normalize(const ExplicitSimplicialSet& E, bool complete) {
    SimplicialSet::Builder b(complete ? std::nullopt : std::optional<int>(E.top));
    std::vector<std::vector<Simplex>> ez(static_cast<std::size_t>(E.top) + 1);
    for (int n = 0; n <= E.top; ++n) {
        const std::size_t size = E.sizes[static_cast<std::size_t>(n)];
        std::vector<std::optional<std::pair<std::size_t, int>>> source(size);
        if (n > 0)
            for (std::size_t y = 0; y < E.sizes[static_cast<std::size_t>(n - 1)]; ++y)
                for (int i = 0; i < n; ++i) {
                    const std::size_t e = E.degeneracies[static_cast<std::size_t>(n - 1)][y][static_cast<std::size_t>(i)];
                    if (e >= size) throw ArgumentError("normalize: degeneracy index out of range");
                    if (!source[e]) source[e] = std::make_pair(y, i);
                }
        auto& level = ez[static_cast<std::size_t>(n)];
        level.resize(size);
        for (std::size_t x = 0; x < size; ++x) {
            if (source[x]) {
                const auto [y, i] = *source[x];
                const Simplex& base = ez[static_cast<std::size_t>(n - 1)][y];
                level[x] = Simplex{n, insert_degeneracy(base.degen, i), base.cell};
                continue;
            }
            std::vector<Simplex> faces;
            for (int i = 0; n > 0 && i <= n; ++i) {
                const std::size_t f = E.faces[static_cast<std::size_t>(n)][x][static_cast<std::size_t>(i)];
                if (f >= E.sizes[static_cast<std::size_t>(n - 1)]) throw ArgumentError("normalize: face index out of range");
                faces.push_back(ez[static_cast<std::size_t>(n - 1)][f]);
            }
            std::string nm = (static_cast<std::size_t>(n) < E.names.size() && x < E.names[static_cast<std::size_t>(n)].size())
                                 ? E.names[static_cast<std::size_t>(n)][x]
                                 : "x" + std::to_string(n) + "_" + std::to_string(x);
            level[x] = Simplex{n, 0, b.add_cell(n, std::move(nm), std::move(faces))};
        }
    }
    return b.build();
}

}  // namespace nw
