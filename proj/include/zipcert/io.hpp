#pragma once

#include "zipcert/certify.hpp"
#include "zipcert/complex.hpp"
#include "zipcert/map.hpp"
#include "zipcert/poset.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

namespace zipcert {

inline constexpr const char* engine_version = "0.1.0";
inline constexpr int poset_format_version = 1;
inline constexpr int certificate_format_version = 1;

class ParseError : public PosetError {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& msg);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_, column_;
};

// Malformed certificate JSON (missing field, wrong type, unknown label).
class CertificateError : public PosetError {
public:
    using PosetError::PosetError;
};

// A parsed input file. Facet files keep their complex so that edge zipping can use it.
struct Subject {
    std::string name;
    Poset poset;
    std::optional<FacetComplex> complex;
};

// Text format, one directive per line, '#' starts a comment:
//   format: zipcert-poset 1      (optional)
//   name: <word>                  (optional)
//   elements: a b ab
//   covers: a<ab b<ab            (any relation; the order is its transitive closure)
// or, for simplicial input, one or more "facets:" lines of vertex words ("abc" or "v1,v2,v3").
Subject parse_subject(std::string_view text);
Poset parse_poset(std::string_view text);
FacetComplex parse_facets(std::string_view text);
Subject read_subject_file(const std::string& path);

// "map: a->x b->y", one arrow per source element; the map must be order-preserving.
MonotoneMap parse_map(std::string_view text, const Poset& source, const Poset& target);

// Elements in the canonical linear extension, covers sorted by that order.
std::string write_poset(const Poset& p, const std::string& name = {});
std::string write_facets(const FacetComplex& k, const std::string& name = {});

std::uint64_t fnv1a(std::string_view bytes);
// Hash of the nameless canonical text, rendered as 16 hex digits.
std::string subject_hash(const Poset& p);

using Json = nlohmann::json;

// Certificate kinds: construction, zipping, edge-zipping, shelling, collapse, barycentric-collapse.
Json certificate_json(const Poset& subject, const ConstructionTree& t);
Json certificate_json(const Poset& subject, const std::vector<ZipStep>& steps, ZipGoal goal);
// Zipping whose end result is the face poset of `target` (goal "target").
Json certificate_json(const Poset& subject, const std::vector<ZipStep>& steps, const FacetComplex& target);
Json certificate_json(const Poset& subject, const std::vector<EdgeZipStep>& steps, const FacetComplex& target);
Json certificate_json(const Poset& subject, const ShellSequence& seq, ShellGoal goal);
Json certificate_json(const Poset& subject, const std::optional<Mask>& target, const CollapseSequence& seq);
Json certificate_json(const Poset& subject, const SimplicialCollapse& pairs, std::size_t remaining);

// Replays the certificate against the subject; malformed payloads are failures, not exceptions.
CheckResult verify_certificate(const Json& cert, const Subject& subject);

// Payload decoders shared by verify_certificate and the translate command; throw CertificateError.
ConstructionTree construction_from_json(const Json& cert, const Poset& subject);
std::vector<ZipStep> zipping_from_json(const Json& cert);
std::vector<EdgeZipStep> edge_zipping_from_json(const Json& cert);
CollapseSequence collapse_from_json(const Json& cert);

}  // namespace zipcert
