#include "nerveworks/io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "nerveworks/error.hpp"

namespace nw::io {

namespace {

std::size_t sz(int v) { return static_cast<std::size_t>(v); }

std::string field_path(const std::string& parent, const std::string& key) { return parent.empty() ? key : parent + "." + key; }
std::string field_path(const std::string& parent, std::size_t index) { return parent + "[" + std::to_string(index) + "]"; }

const Json& member(const Json& doc, const std::string& key, const std::string& path) {
    if (!doc.is_object()) throw ParseError(path, "expected an object");
    auto it = doc.find(key);
    if (it == doc.end()) throw ParseError(field_path(path, key), "missing field");
    return *it;
}

const Json& array_member(const Json& doc, const std::string& key, const std::string& path) {
    const Json& v = member(doc, key, path);
    if (!v.is_array()) throw ParseError(field_path(path, key), "expected an array");
    return v;
}

std::string as_string(const Json& v, const std::string& path) {
    if (!v.is_string()) throw ParseError(path, "expected a string");
    return v.get<std::string>();
}

int as_int(const Json& v, const std::string& path) {
    if (!v.is_number_integer()) throw ParseError(path, "expected an integer");
    return v.get<int>();
}

Integer as_integer(const Json& v, const std::string& path) {
    if (v.is_number_integer()) return Integer(v.get<long long>());
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        const bool digits = !s.empty() && std::all_of(s.begin() + (s[0] == '-' ? 1 : 0), s.end(), [](char c) { return c >= '0' && c <= '9'; }) &&
                            s != "-";
        if (digits) return Integer(s);
    }
    throw ParseError(path, "expected an integer or a decimal string");
}

Json integer_json(const Integer& x) {
    if (x >= Integer(std::numeric_limits<long long>::min()) && x <= Integer(std::numeric_limits<long long>::max()))
        return static_cast<long long>(x);
    return x.str();
}

void check_kind(const Json& doc, const std::string& expected) {
    if (kind_of(doc) != expected) throw ParseError("kind", "expected '" + expected + "', found '" + kind_of(doc) + "'");
}

/// Name -> index lookup with a field path for diagnostics.
int lookup(const std::vector<std::string>& names, const std::string& name, const std::string& path, const char* what) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw ParseError(path, std::string("unknown ") + what + " '" + name + "'");
    return static_cast<int>(it - names.begin());
}

/// Wraps library validation errors so the CLI reports them as input errors.
template <class F>
auto validated(const std::string& path, F&& build) {
    try {
        return build();
    } catch (const ArgumentError& e) {
        throw ParseError(path, e.what());
    }
}

}  // namespace

std::string kind_of(const Json& doc) {
    if (!doc.is_object()) throw ParseError("", "document must be an object");
    return as_string(member(doc, "kind", ""), "kind");
}

Json parse_document(const std::string& text, const std::string& origin) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // count lines up to the byte offset
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ParseError(origin, "syntax error at line " + std::to_string(line) + ", column " + std::to_string(column));
    }
}

Json read_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, "cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str(), path);
}

// ---- simplicial sets ----------------------------------------------------------------

namespace {

Json simplex_json(const SimplicialSet& X, const Simplex& s) {
    const std::string& nm = X.name(s.cell_dim(), s.cell);
    if (!s.degenerate()) return nm;
    return Json{{"cell", nm}, {"degen", s.degen}};
}

}  // namespace

Json write_sset(const SimplicialSet& X) {
    Json doc;
    doc["kind"] = "sset";
    if (X.truncation()) doc["truncation"] = *X.truncation();
    Json cells = Json::array();
    for (int k = 0; k <= X.top_dimension(); ++k) {
        Json level = Json::array();
        for (int i = 0; i < X.cell_count(k); ++i) {
            if (k == 0) {
                level.push_back(X.name(0, i));
                continue;
            }
            Json faces = Json::array();
            for (const auto& f : X.faces(k, i)) faces.push_back(simplex_json(X, f));
            level.push_back(Json{{"name", X.name(k, i)}, {"faces", faces}});
        }
        cells.push_back(level);
    }
    doc["cells"] = cells;
    return doc;
}

SimplicialSet read_sset(const Json& doc) {
    check_kind(doc, "sset");
    std::optional<int> truncation;
    if (doc.contains("truncation") && !doc["truncation"].is_null()) {
        truncation = as_int(doc["truncation"], "truncation");
        if (*truncation < 0) throw ParseError("truncation", "must be nonnegative");
    }
    const Json& cells = array_member(doc, "cells", "");
    SimplicialSet::Builder b(truncation);
    std::vector<std::vector<std::string>> names;
    for (std::size_t k = 0; k < cells.size(); ++k) {
        const std::string lp = field_path("cells", k);
        if (!cells[k].is_array()) throw ParseError(lp, "expected an array of cells");
        names.emplace_back();
        for (std::size_t i = 0; i < cells[k].size(); ++i) {
            const std::string cp = field_path(lp, i);
            const Json& c = cells[k][i];
            if (k == 0) {
                const std::string nm = c.is_object() ? as_string(member(c, "name", cp), field_path(cp, "name")) : as_string(c, cp);
                names[0].push_back(nm);
                validated(cp, [&] { return b.add_cell(0, nm); });
                continue;
            }
            const std::string nm = as_string(member(c, "name", cp), field_path(cp, "name"));
            const Json& fs = array_member(c, "faces", cp);
            std::vector<Simplex> faces;
            for (std::size_t j = 0; j < fs.size(); ++j) {
                const std::string fp = field_path(field_path(cp, "faces"), j);
                std::string target;
                std::uint32_t degen = 0;
                if (fs[j].is_string()) {
                    target = fs[j].get<std::string>();
                } else {
                    target = as_string(member(fs[j], "cell", fp), field_path(fp, "cell"));
                    const int m = as_int(member(fs[j], "degen", fp), field_path(fp, "degen"));
                    if (m < 0) throw ParseError(field_path(fp, "degen"), "must be nonnegative");
                    degen = static_cast<std::uint32_t>(m);
                }
                const int dim = static_cast<int>(k) - 1;
                const int cell_dim = dim - __builtin_popcount(degen);
                if (cell_dim < 0 || sz(cell_dim) >= names.size()) throw ParseError(fp, "degeneracy mask does not fit the face dimension");
                faces.push_back(Simplex{dim, degen, lookup(names[sz(cell_dim)], target, fp, "cell")});
            }
            names[k].push_back(nm);
            validated(cp, [&] { return b.add_cell(static_cast<int>(k), nm, faces); });
        }
    }
    return validated("cells", [&] { return b.build(); });
}

// ---- categories -----------------------------------------------------------------------

Json write_category(const FinCategory& C) {
    Json doc;
    doc["kind"] = "category";
    doc["objects"] = C.object_names();
    Json arrows = Json::array();
    for (const auto& a : C.arrows()) arrows.push_back(Json{{"name", a.name}, {"src", C.object_name(a.source)}, {"dst", C.object_name(a.target)}});
    doc["arrows"] = arrows;
    Json ids = Json::array();
    for (int x = 0; x < C.object_count(); ++x) ids.push_back(C.arrow_name(C.identity(x)));
    doc["identities"] = ids;
    Json compose = Json::array();
    for (int g = 0; g < C.arrow_count(); ++g)
        for (int f = 0; f < C.arrow_count(); ++f)
            if (!C.is_identity(g) && !C.is_identity(f) && C.try_compose(g, f) >= 0)
                compose.push_back(Json::array({C.arrow_name(g), C.arrow_name(f), C.arrow_name(C.try_compose(g, f))}));
    doc["compose"] = compose;
    return doc;
}

FinCategory read_category(const Json& doc) {
    const std::string kind = kind_of(doc);
    if (kind != "category" && kind != "relative-category") throw ParseError("kind", "expected 'category', found '" + kind + "'");
    std::vector<std::string> objects;
    const Json& objs = array_member(doc, "objects", "");
    for (std::size_t i = 0; i < objs.size(); ++i) objects.push_back(as_string(objs[i], field_path("objects", i)));
    if (std::set<std::string>(objects.begin(), objects.end()).size() != objects.size())
        throw ParseError("objects", "duplicate object name");
    std::vector<ArrowSpec> arrows;
    const Json& arrs = array_member(doc, "arrows", "");
    for (std::size_t i = 0; i < arrs.size(); ++i) {
        const std::string p = field_path("arrows", i);
        const std::string nm = as_string(member(arrs[i], "name", p), field_path(p, "name"));
        arrows.push_back({nm, lookup(objects, as_string(member(arrs[i], "src", p), field_path(p, "src")), field_path(p, "src"), "object"),
                          lookup(objects, as_string(member(arrs[i], "dst", p), field_path(p, "dst")), field_path(p, "dst"), "object")});
    }
    std::vector<std::string> arrow_names;
    for (const auto& a : arrows) arrow_names.push_back(a.name);
    if (std::set<std::string>(arrow_names.begin(), arrow_names.end()).size() != arrow_names.size())
        throw ParseError("arrows", "duplicate arrow name");
    const Json compose = doc.contains("compose") ? doc["compose"] : Json::array();
    if (!compose.is_array()) throw ParseError("compose", "expected an array");

    if (!doc.contains("identities")) {
        CategoryBuilder b;
        b.objects = objects;
        b.arrows = arrows;
        for (std::size_t i = 0; i < compose.size(); ++i) {
            const std::string p = field_path("compose", i);
            if (!compose[i].is_array() || compose[i].size() != 3) throw ParseError(p, "expected [g, f, g o f]");
            b.compose.push_back({as_string(compose[i][0], p), as_string(compose[i][1], p), as_string(compose[i][2], p)});
        }
        return validated("compose", [&] { return b.build(); });
    }

    std::vector<int> identities;
    const Json& ids = array_member(doc, "identities", "");
    if (ids.size() != objects.size()) throw ParseError("identities", "need one identity per object");
    for (std::size_t i = 0; i < ids.size(); ++i) {
        const std::string p = field_path("identities", i);
        const int a = lookup(arrow_names, as_string(ids[i], p), p, "arrow");
        if (arrows[sz(a)].source != static_cast<int>(i) || arrows[sz(a)].target != static_cast<int>(i))
            throw ParseError(p, "identity is not an endo-arrow of its object");
        identities.push_back(a);
    }
    const std::size_t A = arrows.size();
    std::vector<bool> is_id(A, false);
    for (int a : identities) is_id[sz(a)] = true;
    std::vector<std::vector<int>> table(A, std::vector<int>(A, -1));
    for (std::size_t g = 0; g < A; ++g)
        for (std::size_t f = 0; f < A; ++f) {
            if (arrows[f].target != arrows[g].source) continue;
            if (is_id[g]) table[g][f] = static_cast<int>(f);
            else if (is_id[f]) table[g][f] = static_cast<int>(g);
        }
    for (std::size_t i = 0; i < compose.size(); ++i) {
        const std::string p = field_path("compose", i);
        if (!compose[i].is_array() || compose[i].size() != 3) throw ParseError(p, "expected [g, f, g o f]");
        const int g = lookup(arrow_names, as_string(compose[i][0], p), p, "arrow");
        const int f = lookup(arrow_names, as_string(compose[i][1], p), p, "arrow");
        const int h = lookup(arrow_names, as_string(compose[i][2], p), p, "arrow");
        if (arrows[sz(f)].target != arrows[sz(g)].source) throw ParseError(p, "arrows are not composable");
        if (is_id[sz(g)] || is_id[sz(f)]) throw ParseError(p, "composites with identities are implied");
        if (table[sz(g)][sz(f)] >= 0) throw ParseError(p, "composite given twice");
        table[sz(g)][sz(f)] = h;
    }
    for (std::size_t g = 0; g < A; ++g)
        for (std::size_t f = 0; f < A; ++f)
            if (arrows[f].target == arrows[g].source && table[g][f] < 0)
                throw ParseError("compose", "missing composite " + arrow_names[g] + " o " + arrow_names[f]);
    return validated("compose", [&] { return FinCategory(objects, arrows, identities, table); });
}

Json write_relative_category(const RelativeCategory& R) {
    Json doc = write_category(R.category);
    doc["kind"] = "relative-category";
    Json weak = Json::array();
    for (int a = 0; a < R.category.arrow_count(); ++a)
        if (R.weak[sz(a)] && !R.category.is_identity(a)) weak.push_back(R.category.arrow_name(a));
    doc["weak"] = weak;
    return doc;
}

RelativeCategory read_relative_category(const Json& doc) {
    FinCategory C = read_category(doc);
    std::vector<int> weak;
    if (doc.contains("weak")) {
        if (!doc["weak"].is_array()) throw ParseError("weak", "expected an array");
        std::vector<std::string> names;
        for (const auto& a : C.arrows()) names.push_back(a.name);
        for (std::size_t i = 0; i < doc["weak"].size(); ++i)
            weak.push_back(lookup(names, as_string(doc["weak"][i], field_path("weak", i)), field_path("weak", i), "arrow"));
    }
    return validated("weak", [&] { return RelativeCategory::with_weak(C, weak); });
}

namespace {

Functor functor_from(const FinCategory& S, const FinCategory& T, const Json& doc, const std::string& path) {
    std::vector<std::string> tobj = T.object_names(), tarr;
    for (const auto& a : T.arrows()) tarr.push_back(a.name);
    const Json& objs = array_member(doc, "objects", path);
    const Json& arrs = array_member(doc, "arrows", path);
    if (objs.size() != sz(S.object_count())) throw ParseError(field_path(path, "objects"), "need one image per source object");
    if (arrs.size() != sz(S.arrow_count())) throw ParseError(field_path(path, "arrows"), "need one image per source arrow");
    std::vector<int> o, a;
    for (std::size_t i = 0; i < objs.size(); ++i) {
        const std::string p = field_path(field_path(path, "objects"), i);
        o.push_back(lookup(tobj, as_string(objs[i], p), p, "object"));
    }
    for (std::size_t i = 0; i < arrs.size(); ++i) {
        const std::string p = field_path(field_path(path, "arrows"), i);
        a.push_back(lookup(tarr, as_string(arrs[i], p), p, "arrow"));
    }
    return validated(path, [&] { return Functor(S, T, o, a); });
}

Json functor_maps(const Functor& F) {
    Json objs = Json::array(), arrs = Json::array();
    for (int x = 0; x < F.source().object_count(); ++x) objs.push_back(F.target().object_name(F.object(x)));
    for (int a = 0; a < F.source().arrow_count(); ++a) arrs.push_back(F.target().arrow_name(F.arrow(a)));
    return Json{{"objects", objs}, {"arrows", arrs}};
}

template <class Reader>
auto nested(const Json& doc, const std::string& key, const std::string& path, Reader read) {
    const Json& sub = member(doc, key, path);
    try {
        return read(sub);
    } catch (const ParseError& e) {
        throw ParseError(field_path(path, key) + (e.field().empty() ? "" : "." + e.field()),
                         std::string(e.what()).substr(e.field().empty() ? 0 : e.field().size() + 2));
    }
}

}  // namespace

Json write_functor(const Functor& F) {
    Json doc;
    doc["kind"] = "functor";
    doc["source"] = write_category(F.source());
    doc["target"] = write_category(F.target());
    const Json maps = functor_maps(F);
    doc["objects"] = maps["objects"];
    doc["arrows"] = maps["arrows"];
    return doc;
}

Functor read_functor(const Json& doc) {
    check_kind(doc, "functor");
    const FinCategory S = nested(doc, "source", "", read_category);
    const FinCategory T = nested(doc, "target", "", read_category);
    return functor_from(S, T, doc, "");
}

Json write_split_functor(const SplitFunctorToCat& F) {
    Json doc;
    doc["kind"] = "split-functor";
    doc["base"] = write_category(F.base);
    Json fibers = Json::array(), transports = Json::array();
    for (const auto& C : F.fibers) fibers.push_back(write_category(C));
    for (const auto& T : F.transports) transports.push_back(functor_maps(T));
    doc["fibers"] = fibers;
    doc["transports"] = transports;
    return doc;
}

SplitFunctorToCat read_split_functor(const Json& doc) {
    check_kind(doc, "split-functor");
    SplitFunctorToCat F;
    F.base = nested(doc, "base", "", read_category);
    const Json& fibers = array_member(doc, "fibers", "");
    const Json& transports = array_member(doc, "transports", "");
    if (fibers.size() != sz(F.base.object_count())) throw ParseError("fibers", "need one fiber per base object");
    if (transports.size() != sz(F.base.arrow_count())) throw ParseError("transports", "need one transport per base arrow");
    for (std::size_t i = 0; i < fibers.size(); ++i) {
        Json wrapped = Json{{"f", fibers[i]}};
        F.fibers.push_back(nested(wrapped, "f", field_path("fibers", i), read_category));
    }
    for (std::size_t a = 0; a < transports.size(); ++a) {
        const int s = F.base.source(static_cast<int>(a)), t = F.base.target(static_cast<int>(a));
        F.transports.push_back(functor_from(F.fibers[sz(s)], F.fibers[sz(t)], transports[a], field_path("transports", a)));
    }
    validated("transports", [&] {
        F.validate();
        return 0;
    });
    return F;
}

// ---- chain complexes ------------------------------------------------------------------

namespace {

Json matrix_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json r = Json::array();
        for (int j = 0; j < m.cols(); ++j) r.push_back(integer_json(m(i, j)));
        rows.push_back(r);
    }
    return rows;
}

IntMatrix matrix_from(const Json& v, int rows, int cols, const std::string& path) {
    if (!v.is_array() || v.size() != sz(rows)) throw ParseError(path, "expected " + std::to_string(rows) + " rows");
    IntMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const Json& r = v[sz(i)];
        const std::string rp = field_path(path, sz(i));
        if (!r.is_array() || r.size() != sz(cols)) throw ParseError(rp, "expected " + std::to_string(cols) + " entries");
        for (int j = 0; j < cols; ++j) m(i, j) = as_integer(r[sz(j)], field_path(rp, sz(j)));
    }
    return m;
}

Ring ring_from(const std::string& s, const std::string& path) {
    auto number = [&](const std::string& digits) {
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw ParseError(path, "unknown ring '" + s + "'");
        return Integer(digits);
    };
    return validated(path, [&] {
        if (s == "Z") return Ring::integers();
        if (s.rfind("Z/", 0) == 0) return Ring::modular(number(s.substr(2)));
        if (s.rfind("F_", 0) == 0) return Ring::prime_field(number(s.substr(2)));
        throw ParseError(path, "unknown ring '" + s + "' (use Z, Z/m or F_p)");
    });
}

}  // namespace

Json write_chain_complex(const ChainComplex& C) {
    Json doc;
    doc["kind"] = "chain-complex";
    doc["ring"] = C.ring().describe();
    doc["lo"] = C.lo();
    Json orders = Json::array(), ds = Json::array();
    for (int n = C.lo(); n <= C.hi(); ++n) {
        Json o = Json::array();
        for (const auto& x : C.orders(n)) o.push_back(integer_json(x));
        orders.push_back(o);
        ds.push_back(matrix_json(C.differential(n)));
    }
    doc["orders"] = orders;
    doc["differentials"] = ds;
    doc["open_below"] = C.open_below();
    doc["open_above"] = C.open_above();
    return doc;
}

ChainComplex read_chain_complex(const Json& doc) {
    check_kind(doc, "chain-complex");
    const Ring ring = ring_from(as_string(member(doc, "ring", ""), "ring"), "ring");
    const int lo = as_int(member(doc, "lo", ""), "lo");
    const Json& orders = array_member(doc, "orders", "");
    std::vector<IntVector> ord;
    for (std::size_t k = 0; k < orders.size(); ++k) {
        const std::string p = field_path("orders", k);
        if (!orders[k].is_array()) throw ParseError(p, "expected an array of orders");
        IntVector o;
        for (std::size_t i = 0; i < orders[k].size(); ++i) o.push_back(as_integer(orders[k][i], field_path(p, i)));
        ord.push_back(o);
    }
    std::vector<IntMatrix> ds;
    if (doc.contains("differentials")) {
        const Json& dj = doc["differentials"];
        if (!dj.is_array() || dj.size() != ord.size()) throw ParseError("differentials", "need one matrix per degree");
        for (std::size_t k = 0; k < ord.size(); ++k)
            ds.push_back(matrix_from(dj[k], k == 0 ? 0 : static_cast<int>(ord[k - 1].size()), static_cast<int>(ord[k].size()),
                                     field_path("differentials", k)));
    } else {
        for (std::size_t k = 0; k < ord.size(); ++k)
            ds.emplace_back(k == 0 ? 0 : static_cast<int>(ord[k - 1].size()), static_cast<int>(ord[k].size()));
    }
    const bool below = doc.contains("open_below") && doc["open_below"].is_boolean() && doc["open_below"].get<bool>();
    const bool above = doc.contains("open_above") && doc["open_above"].is_boolean() && doc["open_above"].get<bool>();
    return validated("differentials", [&] { return ChainComplex(ring, lo, ord, ds, below, above); });
}

Json write_chain_map(const ChainMap& f) {
    Json doc;
    doc["kind"] = "chain-map";
    doc["source"] = write_chain_complex(f.source());
    doc["target"] = write_chain_complex(f.target());
    Json ms = Json::array();
    for (const auto& m : f.matrices()) ms.push_back(matrix_json(m));
    doc["matrices"] = ms;
    return doc;
}

ChainMap read_chain_map(const Json& doc) {
    check_kind(doc, "chain-map");
    const ChainComplex X = nested(doc, "source", "", read_chain_complex);
    const ChainComplex Y = nested(doc, "target", "", read_chain_complex);
    const int lo = std::min(X.lo(), Y.lo()), hi = std::max(X.hi(), Y.hi());
    const Json& ms = array_member(doc, "matrices", "");
    if (ms.size() != sz(hi - lo + 1)) throw ParseError("matrices", "need one matrix per degree " + std::to_string(lo) + ".." + std::to_string(hi));
    std::vector<IntMatrix> mats;
    for (int n = lo; n <= hi; ++n) mats.push_back(matrix_from(ms[sz(n - lo)], Y.rank(n), X.rank(n), field_path("matrices", sz(n - lo))));
    return validated("matrices", [&] { return ChainMap(X, Y, mats); });
}

// ---- bisimplicial sets ----------------------------------------------------------------

Json write_bisimplicial(const BisimplicialSet& X) {
    Json doc;
    doc["kind"] = "bisimplicial";
    doc["M"] = X.M();
    doc["N"] = X.N();
    doc["names"] = X.names();
    doc["hfaces"] = X.hface_table();
    doc["hdegens"] = X.hdegen_table();
    doc["vfaces"] = X.vface_table();
    doc["vdegens"] = X.vdegen_table();
    return doc;
}

BisimplicialSet read_bisimplicial(const Json& doc) {
    check_kind(doc, "bisimplicial");
    const int M = as_int(member(doc, "M", ""), "M"), N = as_int(member(doc, "N", ""), "N");
    auto get = [&](const char* key, auto& out) {
        try {
            member(doc, key, "").get_to(out);
        } catch (const nlohmann::json::exception&) {
            throw ParseError(key, "malformed table");
        }
    };
    std::vector<std::vector<std::vector<std::string>>> names;
    BisimplicialSet::Table hf, hs, vf, vs;
    get("names", names);
    get("hfaces", hf);
    get("hdegens", hs);
    get("vfaces", vf);
    get("vdegens", vs);
    return validated("tables", [&] { return BisimplicialSet(M, N, names, hf, hs, vf, vs); });
}

Json write_horn_witness(const HornWitness& w) {
    Json a = Json::array();
    for (const auto& [cell, image] : w.assignments) a.push_back(Json::array({cell, image}));
    return Json{{"n", w.n}, {"k", w.k}, {"assignments", a}};
}

// ---- graph exports --------------------------------------------------------------------

namespace {

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string dot_category(const FinCategory& C, const std::string& graph_name) {
    std::ostringstream os;
    os << "digraph " << quoted(graph_name) << " {\n";
    for (int x = 0; x < C.object_count(); ++x) os << "  " << quoted(C.object_name(x)) << ";\n";
    for (int a = 0; a < C.arrow_count(); ++a)
        if (!C.is_identity(a))
            os << "  " << quoted(C.object_name(C.source(a))) << " -> " << quoted(C.object_name(C.target(a))) << " [label=" << quoted(C.arrow_name(a))
               << "];\n";
    os << "}\n";
    return os.str();
}

std::string dot_sset(const SimplicialSet& X, const std::string& graph_name) {
    std::ostringstream os;
    os << "digraph " << quoted(graph_name) << " {\n";
    for (int v = 0; v < X.cell_count(0); ++v) os << "  " << quoted(X.name(0, v)) << ";\n";
    for (int e = 0; X.top_dimension() >= 1 && e < X.cell_count(1); ++e) {
        const auto vs = X.vertices(SimplicialSet::cell(1, e));
        os << "  " << quoted(X.name(0, vs[0])) << " -> " << quoted(X.name(0, vs[1])) << " [label=" << quoted(X.name(1, e)) << "];\n";
    }
    for (int t = 0; X.top_dimension() >= 2 && t < X.cell_count(2); ++t) {
        const auto vs = X.vertices(SimplicialSet::cell(2, t));
        os << "  // triangle " << X.name(2, t) << ": " << X.name(0, vs[0]) << " " << X.name(0, vs[1]) << " " << X.name(0, vs[2]) << "\n";
    }
    os << "}\n";
    return os.str();
}

std::string dot_cocart(const Functor& F, const CocartAnalysis& analysis) {
    const auto& C = F.source();
    std::ostringstream os;
    os << "digraph \"cocart\" {\n";
    for (int x = 0; x < C.object_count(); ++x)
        os << "  " << quoted(C.object_name(x)) << " [label=" << quoted(C.object_name(x) + " / " + F.target().object_name(F.object(x))) << "];\n";
    for (int a = 0; a < C.arrow_count(); ++a) {
        if (C.is_identity(a)) continue;
        const auto& flags = analysis.arrows[sz(a)];
        os << "  " << quoted(C.object_name(C.source(a))) << " -> " << quoted(C.object_name(C.target(a))) << " [label=" << quoted(C.arrow_name(a))
           << ", cocartesian=" << (flags.cocartesian ? "true" : "false")
           << ", locally_cocartesian=" << (flags.locally_cocartesian ? "true" : "false");
        if (flags.locally_cocartesian && !flags.cocartesian) os << ", style=dashed";
        else if (flags.cocartesian) os << ", style=bold";
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace nw::io
