#include "nerveworks/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "nerveworks/chain_model.hpp"
#include "nerveworks/doldkan.hpp"
#include "nerveworks/error.hpp"
#include "nerveworks/fibrations.hpp"
#include "nerveworks/hcnerve.hpp"
#include "nerveworks/io.hpp"
#include "nerveworks/quasicat.hpp"
#include "nerveworks/segal.hpp"

namespace nw::cli {

namespace {

using io::Json;

std::size_t sz(int v) { return static_cast<std::size_t>(v); }

enum class Format { text, json, dot };

struct Job {
    std::string command;
    std::vector<std::string> inputs;
    std::optional<int> dim;
    std::optional<int> fuel;
    std::string mode;
    std::string base;
    std::string target;
    std::string group;
    std::string out;
    Format format = Format::text;
};

/// What a command produces: a text report, a structured document and optionally a graph.
struct Outcome {
    int exit = verdict_true;
    std::string text;
    Json json;
    std::optional<std::string> dot;
};

/// An input problem that is not a document parse error (missing flag, wrong arity, ...).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int need_dim(const Job& job, int fallback) {
    const int d = job.dim.value_or(fallback);
    if (d < 0) throw UsageError("--dim must be nonnegative");
    return d;
}

int need_fuel(const Job& job) {
    if (!job.fuel) throw UsageError("--fuel is required for " + job.command);
    if (*job.fuel < 1) throw UsageError("--fuel must be at least 1");
    return *job.fuel;
}

const std::string& input(const Job& job, std::size_t i = 0) {
    if (job.inputs.size() <= i) throw UsageError(job.command + " needs " + std::to_string(i + 1) + " input file(s)");
    return job.inputs[i];
}

Json document(const Job& job, std::size_t i = 0) { return io::read_document(input(job, i)); }

int vertex_named(const SimplicialSet& X, const std::string& name, const char* flag) {
    if (name.empty()) throw UsageError(std::string(flag) + " is required");
    auto s = X.find(0, name);
    if (!s) throw UsageError(std::string(flag) + ": no vertex named '" + name + "'");
    return s->cell;
}

std::string sset_summary(const SimplicialSet& X) {
    std::ostringstream os;
    os << "simplicial set, " << (X.truncation() ? "truncated at " + std::to_string(*X.truncation()) : std::string("complete"))
       << "; non-degenerate cells:";
    for (int k = 0; k <= X.top_dimension(); ++k) os << " " << X.cell_count(k);
    os << "\n";
    for (int k = 1; k <= X.top_dimension(); ++k)
        for (int i = 0; i < X.cell_count(k); ++i) {
            os << "  " << X.name(k, i) << " :";
            for (const auto& f : X.faces(k, i)) os << " " << X.describe(f);
            os << "\n";
        }
    return os.str();
}

Outcome sset_outcome(const SimplicialSet& X) {
    return {verdict_true, sset_summary(X), io::write_sset(X), io::dot_sset(X)};
}

Outcome category_outcome(const FinCategory& C) { return {verdict_true, describe(C), io::write_category(C), io::dot_category(C)}; }

Json counts_json(const HornReport& r) {
    Json counts = Json::array();
    for (const auto& c : r.counts)
        counts.push_back(Json{{"n", c.n}, {"k", c.k}, {"tested", c.tested}, {"unfillable", c.unfillable}, {"non_unique", c.non_unique}});
    return counts;
}

Outcome lifting_failure(const LiftingFailure& e) {
    Outcome o;
    o.exit = verdict_false;
    o.text = std::string(e.what()) + "\n";
    o.json = Json{{"verdict", false}, {"reason", e.what()}, {"witness", io::write_horn_witness(e.witness())}};
    return o;
}

HornMode mode_named(const std::string& m, HornMode fallback) {
    if (m.empty()) return fallback;
    if (m == "inner") return HornMode::inner;
    if (m == "kan") return HornMode::kan;
    if (m == "left") return HornMode::left;
    if (m == "right") return HornMode::right;
    throw UsageError("--mode must be one of inner, kan, left, right");
}

Outcome horn_check(const Job& job, HornMode fallback) {
    const SimplicialSet X = io::read_sset(document(job));
    const HornMode mode = mode_named(job.mode, fallback);
    const HornReport r = classify(X, need_dim(job, 3), mode);
    Outcome o;
    const bool ok = r.all_fillable();
    o.exit = ok ? verdict_true : verdict_false;
    o.text = r.describe();
    if (ok && mode == HornMode::inner) o.text += r.unique_fillers() ? "all inner horns fill uniquely\n" : "some inner horn has several fillers\n";
    o.json = Json{{"verdict", ok}, {"mode", to_string(mode)}, {"bound", r.bound}, {"unique_fillers", r.unique_fillers()}, {"counts", counts_json(r)}};
    if (r.witness) o.json["witness"] = io::write_horn_witness(*r.witness);
    return o;
}

Outcome cmd_ho(const Job& job) {
    const SimplicialSet X = io::read_sset(document(job));
    try {
        return category_outcome(homotopy_category(X));
    } catch (const LiftingFailure& e) {
        return lifting_failure(e);
    }
}

Outcome cmd_equivalences(const Job& job) {
    const SimplicialSet X = io::read_sset(document(job));
    try {
        Outcome o;
        Json list = Json::array();
        for (const auto& e : equivalences(X)) {
            o.text += X.describe(e) + "\n";
            list.push_back(X.describe(e));
        }
        o.json = Json{{"equivalences", list}};
        return o;
    } catch (const LiftingFailure& e) {
        return lifting_failure(e);
    }
}

Outcome cmd_max_kan(const Job& job) {
    const SimplicialSet X = io::read_sset(document(job));
    try {
        return sset_outcome(max_kan_subset(X).object);
    } catch (const LiftingFailure& e) {
        return lifting_failure(e);
    }
}

Outcome cmd_hom_space(const Job& job) {
    const SimplicialSet X = io::read_sset(document(job));
    HomSide side = HomSide::right;
    if (job.mode == "left") side = HomSide::left;
    else if (!job.mode.empty() && job.mode != "right") throw UsageError("--mode must be right or left");
    try {
        return sset_outcome(hom_space(X, vertex_named(X, job.base, "--base"), vertex_named(X, job.target, "--target"), side, need_dim(job, 2)));
    } catch (const LiftingFailure& e) {
        return lifting_failure(e);
    }
}

Outcome cmd_pi(const Job& job, int n) {
    const SimplicialSet X = io::read_sset(document(job));
    const int x = vertex_named(X, job.base, "--base");
    try {
        const auto g = homotopy_group(X, x, n);
        Outcome o;
        if (const auto* s = std::get_if<SetReport>(&g)) {
            Json classes = Json::array();
            o.text = "pi_0: " + std::to_string(s->classes.size()) + " components\n";
            for (const auto& c : s->classes) {
                Json names = Json::array();
                std::string line = " ";
                for (int v : c) {
                    names.push_back(X.name(0, v));
                    line += " " + X.name(0, v);
                }
                classes.push_back(names);
                o.text += line + "\n";
            }
            o.json = Json{{"components", classes}, {"basepoint_component", s->class_of_basepoint}};
        } else {
            const auto& G = std::get<GroupPresentation>(g);
            o.text = "pi_" + std::to_string(n) + ": " + G.describe() + "\n";
            o.json = Json{{"order", G.order}, {"abelian", G.abelian}, {"description", G.describe()}, {"identity", G.identity}, {"table", G.table}};
        }
        return o;
    } catch (const LiftingFailure& e) {
        return lifting_failure(e);
    }
}

Outcome cmd_bg(const Job& job) {
    const std::string& g = job.group;
    if (g == "s3") return category_outcome(bg(symmetric3_table()));
    if (g.size() > 1 && g[0] == 'z') {
        int n = 0;
        try {
            n = std::stoi(g.substr(1));
        } catch (const std::exception&) {
            n = 0;
        }
        if (n >= 1 && n <= 64) return category_outcome(bg(cyclic_group_table(n)));
    }
    throw UsageError("--group must be z<n> (1 <= n <= 64) or s3");
}

Outcome cmd_localize(const Job& job) {
    const RelativeCategory R = io::read_relative_category(document(job));
    const auto result = localize(R, need_fuel(job));
    if (const auto* f = std::get_if<FuelExhausted>(&result)) {
        return {undecided, "fuel exhausted after " + std::to_string(f->rounds) + " rounds: " + f->reason + "\n",
                Json{{"fuel_exhausted", true}, {"rounds", f->rounds}, {"reason", f->reason}}, std::nullopt};
    }
    const auto& L = std::get<Localization>(result);
    Outcome o = category_outcome(L.category);
    o.text = "localized in " + std::to_string(L.rounds) + " rounds\n" + o.text;
    return o;
}

Outcome cmd_frak_c(const Job& job) {
    const int n = need_dim(job, 2);
    const SimplicialCategory C = frak_c(n);
    Outcome o;
    Json maps = Json::array();
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
            const auto& M = C.map(i, j);
            Json counts = Json::array();
            std::string line = "Map(" + std::to_string(i) + "," + std::to_string(j) + "):";
            for (int k = 0; k <= M.top_dimension(); ++k) {
                counts.push_back(M.cell_count(k));
                line += " " + std::to_string(M.cell_count(k));
            }
            o.text += line + "\n";
            maps.push_back(Json{{"from", i}, {"to", j}, {"cells", counts}});
        }
    o.json = Json{{"n", n}, {"maps", maps}};
    return o;
}

Outcome chain_outcome(const ChainComplex& C) {
    std::ostringstream os;
    os << "chain complex over " << C.ring().describe() << ", degrees " << C.lo() << ".." << C.hi() << ", ranks";
    for (int n = C.lo(); n <= C.hi(); ++n) os << " " << C.rank(n);
    os << "\n" << homology(C).describe();
    return {verdict_true, os.str(), io::write_chain_complex(C), std::nullopt};
}

Outcome cmd_normalized_chains(const Job& job) {
    const SimplicialSet X = io::read_sset(document(job));
    return chain_outcome(normalized_chains(SimplicialAbGroup::free_abelian(X, need_dim(job, 3))));
}

Outcome cmd_dold_kan(const Job& job) {
    const ChainComplex C = io::read_chain_complex(document(job));
    if (!job.dim && C.hi() > 3) throw UsageError("dold-kan: the complex reaches above degree 3, pass --dim");
    const int D = need_dim(job, std::max(C.hi(), 0));
    const SimplicialAbGroup G = dold_kan_gamma(C, D);
    const ChainComplex back = normalized_chains(G);
    Outcome o;
    Json ranks = Json::array();
    o.text = "Gamma ranks through level " + std::to_string(D) + ":";
    for (int n = 0; n <= D; ++n) {
        ranks.push_back(G.rank(n));
        o.text += " " + std::to_string(G.rank(n));
    }
    bool round_trip = true;
    for (int n = 0; n <= D; ++n) round_trip = round_trip && back.rank(n) == C.rank(n);
    o.text += "\nnormalized chains of Gamma recover the ranks: " + std::string(round_trip ? "yes" : "no") + "\n";
    o.json = Json{{"levels", D}, {"ranks", ranks}, {"normalized", io::write_chain_complex(back)}, {"ranks_recovered", round_trip}};
    o.exit = round_trip ? verdict_true : verdict_false;
    return o;
}

Outcome cmd_homology(const Job& job) {
    const Json doc = document(job);
    ChainComplex C;
    if (io::kind_of(doc) == "sset") C = normalized_chains(SimplicialAbGroup::free_abelian(io::read_sset(doc), need_dim(job, 3)));
    else C = io::read_chain_complex(doc);
    const Homology H = homology(C);
    Outcome o;
    o.text = H.describe();
    Json groups = Json::array();
    for (std::size_t k = 0; k < H.groups.size(); ++k)
        groups.push_back(Json{{"degree", H.lo + static_cast<int>(k)}, {"group", H.groups[k].describe()}, {"edge", static_cast<bool>(H.edge[k])}});
    o.json = Json{{"homology", groups}};
    return o;
}

Outcome cmd_quasi_iso(const Job& job) {
    const ChainMap f = io::read_chain_map(document(job));
    const QuasiIsoVerdict v = is_quasi_iso(f);
    Outcome o;
    o.exit = v.quasi_iso ? verdict_true : verdict_false;
    o.text = v.describe();
    o.json = Json{{"verdict", v.quasi_iso}, {"failing_degrees", v.failing_degrees}, {"inconclusive_degrees", v.inconclusive_degrees}};
    if (!v.quasi_iso) o.json["witness"] = Json{{"cone", io::write_chain_complex(cone(f))}, {"failing_degrees", v.failing_degrees}};
    return o;
}

Json certificate_json(const FactorizationCertificate& c) {
    return Json{{"middle", io::write_chain_complex(c.middle)},
                {"first", io::write_chain_map(c.first)},
                {"second", io::write_chain_map(c.second)},
                {"first_is_trivial_cofibration", c.first_is_trivial_cofibration},
                {"first_is_standard_cofibration", c.first_is_standard_cofibration},
                {"second_is_fibration", c.second_is_fibration},
                {"second_is_trivial_fibration", c.second_is_trivial_fibration},
                {"stages", c.stages.size()}};
}

Outcome cmd_factor_4a(const Job& job) {
    const auto c = factor_trivcofib_fib(io::read_chain_map(document(job)));
    return {verdict_true, c.describe(), certificate_json(c), std::nullopt};
}

Outcome cmd_factor_4b(const Job& job) {
    const auto r = factor_cofib_trivfib(io::read_chain_map(document(job)), need_fuel(job));
    if (const auto* p = std::get_if<PartialFactorization>(&r)) {
        Json j = certificate_json(p->partial);
        j["fuel_exhausted"] = true;
        j["reason"] = p->exhausted.reason;
        return {undecided, "fuel exhausted after " + std::to_string(p->exhausted.rounds) + " stages: " + p->exhausted.reason + "\n" +
                               p->partial.describe(),
                j, std::nullopt};
    }
    const auto& c = std::get<FactorizationCertificate>(r);
    return {verdict_true, c.describe(), certificate_json(c), std::nullopt};
}

Json missing_lifts_json(const Functor& F, const std::vector<MissingLift>& lifts) {
    Json out = Json::array();
    for (const auto& m : lifts)
        out.push_back(Json{{"object", F.source().object_name(m.object)}, {"base_arrow", F.target().arrow_name(m.base_arrow)}});
    return out;
}

Outcome cmd_left_fibration(const Job& job) {
    const Functor F = io::read_functor(document(job));
    const auto v = is_left_fibration(F);
    Outcome o;
    o.exit = v.holds ? verdict_true : verdict_false;
    const auto& C = F.source();
    const auto& D = F.target();
    Json horns = Json::array();
    o.text = v.holds ? "left fibration\n" : "not a left fibration\n";
    for (const auto& m : v.missing_lifts)
        o.text += "  no lift of " + D.arrow_name(m.base_arrow) + " at " + C.object_name(m.object) + "\n";
    for (const auto& h : v.horn_failures) {
        o.text += "  horn (" + C.arrow_name(h.alpha) + ", " + C.arrow_name(h.beta) + ") over " + D.arrow_name(h.base_arrow) + " has " +
                  std::to_string(h.fillers) + " fillers\n";
        horns.push_back(Json{{"alpha", C.arrow_name(h.alpha)}, {"beta", C.arrow_name(h.beta)}, {"base_arrow", D.arrow_name(h.base_arrow)}, {"fillers", h.fillers}});
    }
    o.json = Json{{"verdict", v.holds}};
    if (!v.holds) o.json["witness"] = Json{{"missing_lifts", missing_lifts_json(F, v.missing_lifts)}, {"horn_failures", horns}};
    return o;
}

Outcome cmd_cocart(const Job& job) {
    const Functor F = io::read_functor(document(job));
    const CocartAnalysis a = cocart_analyze(F);
    Outcome o;
    o.exit = a.is_cocartesian_fibration ? verdict_true : verdict_false;
    o.text = a.report(F);
    Json arrows = Json::array();
    for (int f = 0; f < F.source().arrow_count(); ++f)
        arrows.push_back(Json{{"arrow", F.source().arrow_name(f)},
                              {"cocartesian", static_cast<bool>(a.arrows[sz(f)].cocartesian)},
                              {"locally_cocartesian", static_cast<bool>(a.arrows[sz(f)].locally_cocartesian)}});
    o.json = Json{{"cocartesian_fibration", a.is_cocartesian_fibration},
                  {"locally_cocartesian_fibration", a.is_locally_cocartesian_fibration},
                  {"left_fibration", a.is_left_fibration},
                  {"arrows", arrows}};
    if (!a.is_cocartesian_fibration) {
        Json bad_pairs = Json::array();
        for (const auto& p : a.pairs)
            if (!p.composite_locally_cocartesian)
                bad_pairs.push_back(Json::array({F.source().arrow_name(p.second), F.source().arrow_name(p.first)}));
        o.json["witness"] = Json{{"missing_cocartesian_lifts", missing_lifts_json(F, a.missing_cocartesian_lifts)},
                                 {"non_composing_pairs", bad_pairs}};
    }
    o.dot = io::dot_cocart(F, a);
    return o;
}

Outcome cmd_grothendieck_build(const Job& job) {
    const Functor P = grothendieck_build(io::read_split_functor(document(job)));
    return {verdict_true, describe(P.source()), io::write_functor(P), io::dot_category(P.source())};
}

Outcome cmd_grothendieck_read(const Job& job) {
    const Functor F = io::read_functor(document(job));
    const CocartAnalysis a = cocart_analyze(F);
    if (!a.is_locally_cocartesian_fibration) {
        return {verdict_false, "not a locally cocartesian fibration\n" + a.report(F),
                Json{{"verdict", false}, {"witness", Json{{"missing_local_lifts", missing_lifts_json(F, a.missing_local_lifts)}}}}, std::nullopt};
    }
    const GrothendieckReading r = grothendieck_read(F, a);
    const auto& C = F.source();
    const auto& D = F.target();
    Outcome o;
    std::ostringstream os;
    Json fibers = Json::array(), transports = Json::array(), theta = Json::array();
    for (int d = 0; d < D.object_count(); ++d) {
        os << "fiber over " << D.object_name(d) << ": " << r.fibers[sz(d)].object_count() << " objects, " << r.fibers[sz(d)].arrow_count()
           << " arrows\n";
        fibers.push_back(io::write_category(r.fibers[sz(d)]));
    }
    for (int b = 0; b < D.arrow_count(); ++b) {
        os << "transport along " << D.arrow_name(b) << ":";
        for (int c = 0; c < r.fibers[sz(D.source(b))].object_count(); ++c)
            os << " " << r.fibers[sz(D.source(b))].object_name(c) << "->" << r.fibers[sz(D.target(b))].object_name(r.transports[sz(b)].object(c));
        os << "\n";
        Json t = io::write_functor(r.transports[sz(b)]);
        transports.push_back(Json{{"objects", t["objects"]}, {"arrows", t["arrows"]}});
    }
    for (const auto& t : r.theta) {
        if (t.iso) continue;
        os << "theta(" << D.arrow_name(t.b) << ", " << D.arrow_name(t.a) << ") at " << C.object_name(t.object) << " is " << C.arrow_name(t.arrow)
           << ", not invertible\n";
        theta.push_back(Json{{"a", D.arrow_name(t.a)}, {"b", D.arrow_name(t.b)}, {"object", C.object_name(t.object)}, {"arrow", C.arrow_name(t.arrow)}});
    }
    os << "all theta maps invertible: " << (r.all_theta_iso ? "yes" : "no") << "\n"
       << "independent of the choice of lifts: " << (r.choice_independent ? "yes" : "no") << " (" << r.choices_examined << " choices, "
       << (r.choices_exhaustive ? "exhaustive" : "sampled") << ")\n";
    o.text = os.str();
    o.json = Json{{"fibers", fibers},
                  {"transports", transports},
                  {"non_invertible_theta", theta},
                  {"all_theta_iso", r.all_theta_iso},
                  {"agrees_with_cocartesian", r.agrees_with_cocartesian},
                  {"choice_independent", r.choice_independent}};
    return o;
}

/// A bisimplicial input: a bisimplicial document, a simplicial set (discrete embedding) or a
/// (relative) category (Rezk nerve).
BisimplicialSet bisimplicial_input(const Job& job, int fallback_dim) {
    const Json doc = document(job);
    const std::string kind = io::kind_of(doc);
    if (kind == "bisimplicial") return io::read_bisimplicial(doc);
    if (kind == "sset") return embed(EmbedKind::discrete, io::read_sset(doc), need_dim(job, fallback_dim));
    if (kind == "category" || kind == "relative-category") {
        const int d = need_dim(job, fallback_dim);
        return rezk_nerve(io::read_relative_category(doc), d, d);
    }
    throw ParseError("kind", "expected a bisimplicial set, simplicial set or relative category");
}

Outcome cmd_rezk(const Job& job) {
    const int d = need_dim(job, 2);
    const BisimplicialSet B = rezk_nerve(io::read_relative_category(document(job)), d, d);
    Outcome o;
    for (int m = 0; m <= d; ++m) {
        o.text += "row " + std::to_string(m) + ":";
        for (int n = 0; n <= d; ++n) o.text += " " + std::to_string(B.size(m, n));
        o.text += "\n";
    }
    o.json = io::write_bisimplicial(B);
    return o;
}

Outcome cmd_segal(const Job& job) {
    const BisimplicialSet B = bisimplicial_input(job, 3);
    const SegalVerdict v = strict_segal_check(B);
    Json failures = Json::array();
    for (const auto& f : v.failures)
        failures.push_back(Json{{"m", f.m}, {"n", f.n}, {"cells", f.cells}, {"spine_tuples", f.spine_tuples}, {"injective", f.injective}});
    Outcome o;
    o.exit = v.holds ? verdict_true : verdict_false;
    o.text = v.describe() + "\n";
    o.json = Json{{"verdict", v.holds}};
    if (!v.holds) o.json["witness"] = Json{{"failures", failures}};
    return o;
}

Outcome cmd_completeness(const Job& job) {
    const BisimplicialSet B = bisimplicial_input(job, 3);
    const auto r = completeness_check(B);
    if (const auto* nd = std::get_if<NotDecidable>(&r))
        return {undecided, "not decidable: " + nd->reason + "\n", Json{{"decidable", false}, {"reason", nd->reason}}, std::nullopt};
    const auto& v = std::get<CompletenessVerdict>(r);
    Outcome o;
    o.exit = v.complete ? verdict_true : verdict_false;
    o.text = v.describe() + "\n";
    o.json = Json{{"verdict", v.complete},
                  {"essentially_surjective", v.essentially_surjective},
                  {"fully_faithful", v.fully_faithful},
                  {"objects", v.objects},
                  {"equivalence_vertices", v.equivalence_vertices},
                  {"equivalence_classes", v.equivalence_classes}};
    return o;
}

Outcome cmd_export_dot(const Job& job) {
    const Json doc = document(job);
    const std::string kind = io::kind_of(doc);
    Outcome o;
    if (kind == "category" || kind == "relative-category") o.dot = io::dot_category(io::read_category(doc));
    else if (kind == "sset") o.dot = io::dot_sset(skeleton(io::read_sset(doc), 2));
    else if (kind == "functor") {
        const Functor F = io::read_functor(doc);
        o.dot = io::dot_cocart(F, cocart_analyze(F));
    } else {
        throw UnsupportedInput("export-dot: unsupported object kind '" + kind + "'");
    }
    o.text = *o.dot;
    return o;
}

using Handler = std::function<Outcome(const Job&)>;

const std::vector<std::pair<std::string, std::pair<std::string, Handler>>>& commands() {
    static const std::vector<std::pair<std::string, std::pair<std::string, Handler>>> table = {
        {"check-quasicategory", {"inner horn filling through --dim", [](const Job& j) { return horn_check(j, HornMode::inner); }}},
        {"check-kan", {"horn filling through --dim (--mode kan|left|right|inner)", [](const Job& j) { return horn_check(j, HornMode::kan); }}},
        {"ho", {"homotopy category of a quasicategory", cmd_ho}},
        {"equivalences", {"edges invertible in Ho", cmd_equivalences}},
        {"max-kan", {"maximal Kan subset", cmd_max_kan}},
        {"hom-space", {"Hom^R (or --mode left) from --base to --target through --dim", cmd_hom_space}},
        {"pi0", {"path components", [](const Job& j) { return cmd_pi(j, 0); }}},
        {"pi1", {"fundamental group at --base", [](const Job& j) { return cmd_pi(j, 1); }}},
        {"pin", {"homotopy group pi_n at --base, n = --dim", [](const Job& j) {
                     if (!j.dim) throw UsageError("pin needs --dim");
                     return cmd_pi(j, need_dim(j, 1));
                 }}},
        {"nerve", {"nerve of a category through --dim", [](const Job& j) {
                       return sset_outcome(nerve(io::read_category(document(j)), need_dim(j, 3)));
                   }}},
        {"bg", {"one-object category of --group z<n> or s3", cmd_bg}},
        {"localize", {"localization at the weak arrows with --fuel rounds", cmd_localize}},
        {"coherent-nerve", {"homotopy coherent nerve of a category through --dim", [](const Job& j) {
                                return sset_outcome(coherent_nerve(SimplicialCategory::from_category(io::read_category(document(j))), need_dim(j, 3)));
                            }}},
        {"frak-c", {"mapping spaces of c[n], n = --dim", cmd_frak_c}},
        {"normalized-chains", {"normalized chains of Z[X] through --dim", cmd_normalized_chains}},
        {"dold-kan", {"Gamma of a chain complex through --dim", cmd_dold_kan}},
        {"homology", {"homology of a chain complex (or of Z[X] through --dim)", cmd_homology}},
        {"quasi-iso", {"quasi-isomorphism test for a chain map", cmd_quasi_iso}},
        {"factor-4a", {"trivial cofibration followed by fibration", cmd_factor_4a}},
        {"factor-4b", {"cofibration followed by trivial fibration within --fuel stages", cmd_factor_4b}},
        {"left-fibration", {"left fibration test for a functor", cmd_left_fibration}},
        {"cocart-analyze", {"cocartesian and locally cocartesian arrows of a functor", cmd_cocart}},
        {"grothendieck-build", {"total category of a split functor to Cat", cmd_grothendieck_build}},
        {"grothendieck-read", {"fibers, transports and theta maps of a locally cocartesian fibration", cmd_grothendieck_read}},
        {"join", {"join of two categories", [](const Job& j) {
                      return category_outcome(join(io::read_category(document(j, 0)), io::read_category(document(j, 1))));
                  }}},
        {"twisted-arrows", {"twisted arrow category with its projection", [](const Job& j) {
                                const auto T = twisted_arrows(io::read_category(document(j)));
                                return Outcome{verdict_true, describe(T.category), io::write_functor(T.projection), io::dot_category(T.category)};
                            }}},
        {"rezk-nerve", {"Rezk nerve of a relative category truncated at (--dim, --dim)", cmd_rezk}},
        {"segal-check", {"strict Segal condition", cmd_segal}},
        {"completeness", {"completeness of a Segal space with groupoid rows", cmd_completeness}},
        {"export-dot", {"graph export of a category, simplicial set or functor", cmd_export_dot}},
    };
    return table;
}

void emit(const Job& job, const Outcome& o, std::ostream& out) {
    std::string body;
    switch (job.format) {
        case Format::text: body = o.text; break;
        case Format::json: {
            Json doc = o.json.is_null() ? Json::object() : o.json;
            body = doc.dump(2) + "\n";
            break;
        }
        case Format::dot:
            if (!o.dot) throw UnsupportedInput(job.command + " has no graph output");
            body = *o.dot;
            break;
    }
    if (job.out.empty()) {
        out << body;
        return;
    }
    std::ofstream f(job.out, std::ios::binary);
    if (!f) throw UsageError("cannot write " + job.out);
    f << body;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite simplicial sets, categories and chain complexes", "nerveworks"};
    app.require_subcommand(1);
    Job job;
    std::string format = "text";
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, entry] : commands()) {
        CLI::App* sub = app.add_subcommand(name, entry.first);
        sub->add_option("inputs", job.inputs, "input documents");
        sub->add_option("--dim", job.dim, "dimension bound");
        sub->add_option("--fuel", job.fuel, "work budget");
        sub->add_option("--mode", job.mode, "variant of the operation");
        sub->add_option("--base", job.base, "base vertex");
        sub->add_option("--target", job.target, "target vertex");
        sub->add_option("--group", job.group, "group for bg");
        sub->add_option("--out", job.out, "write the artifact here");
        sub->add_option("--format", format, "text, json or dot")->check(CLI::IsMember({"text", "json", "dot"}));
        subs[name] = sub;
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, e2;
        const int code = app.exit(e, o, e2);
        out << o.str();
        err << e2.str();
        return code == 0 ? verdict_true : input_error;
    }
    job.format = format == "json" ? Format::json : format == "dot" ? Format::dot : Format::text;
    const Handler* handler = nullptr;
    for (const auto& [name, entry] : commands())
        if (subs[name]->parsed()) {
            job.command = name;
            handler = &entry.second;
        }
    try {
        const Outcome o = (*handler)(job);
        emit(job, o, out);
        return o.exit;
    } catch (const ParseError& e) {
        err << "input error: " << e.what() << "\n";
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
    } catch (const ArgumentError& e) {
        err << "input error: " << e.what() << "\n";
    } catch (const UnsupportedInput& e) {
        err << "unsupported input: " << e.what() << "\n";
    } catch (const LiftingFailure& e) {
        err << "lifting failure: " << e.what() << "\n";
        return verdict_false;
    } catch (const InconsistencyError& e) {
        err << "internal inconsistency: " << e.what() << "\n";
    }
    return input_error;
}

}  // namespace nw::cli
