#pragma once

#include <string>

#include <json.hpp>

#include "nerveworks/category.hpp"
#include "nerveworks/chain_model.hpp"
#include "nerveworks/fibrations.hpp"
#include "nerveworks/quasicat.hpp"
#include "nerveworks/segal.hpp"
#include "nerveworks/sset.hpp"

namespace nw::io {

using Json = nlohmann::ordered_json;

/// The `kind` field of a document ("sset", "category", "functor", ...); ParseError if missing.
std::string kind_of(const Json& doc);

/// Parses text, reporting syntax errors with line and column.
Json parse_document(const std::string& text, const std::string& origin);
Json read_document(const std::string& path);

// Every reader throws ParseError naming the offending field; writers produce documents the
// readers accept and that reproduce the value exactly.

Json write_sset(const SimplicialSet& X);
SimplicialSet read_sset(const Json& doc);

/// Arrows include identities; `compose` lists g o f for pairs of non-identity arrows.
/// Documents without `identities` get "id_<object>" arrows added, as in CategoryBuilder.
Json write_category(const FinCategory& C);
FinCategory read_category(const Json& doc);
/// A category document with a `weak` list of arrow names (identities are always weak).
Json write_relative_category(const RelativeCategory& R);
RelativeCategory read_relative_category(const Json& doc);

Json write_functor(const Functor& F);
Functor read_functor(const Json& doc);

Json write_split_functor(const SplitFunctorToCat& F);
SplitFunctorToCat read_split_functor(const Json& doc);

/// Large integers are written as decimal strings; readers accept numbers or strings.
Json write_chain_complex(const ChainComplex& C);
ChainComplex read_chain_complex(const Json& doc);
Json write_chain_map(const ChainMap& f);
ChainMap read_chain_map(const Json& doc);

Json write_bisimplicial(const BisimplicialSet& X);
BisimplicialSet read_bisimplicial(const Json& doc);

Json write_horn_witness(const HornWitness& w);

/// Graph exports. Nodes are objects or vertices, edges are non-identity arrows or
/// non-degenerate edges; triangles of a simplicial set are listed as comments.
std::string dot_category(const FinCategory& C, const std::string& graph_name = "C");
std::string dot_sset(const SimplicialSet& X, const std::string& graph_name = "X");
/// The source category of F with each arrow annotated by its cocartesian flags.
std::string dot_cocart(const Functor& F, const CocartAnalysis& analysis);

}  // namespace nw::io
