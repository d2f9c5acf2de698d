#include "zipcert/io.hpp"

#include "zipcert/iso.hpp"
#include "zipcert/ops.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace zipcert {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& msg)
    : PosetError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

namespace {

struct Token {
    std::string text;
    std::size_t column;  // 1-based
};

std::vector<Token> split_words(std::string_view line, std::size_t offset) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) out.push_back({std::string(line.substr(start, i - start)), offset + start + 1});
    }
    return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

std::vector<std::string> facet_vertices(const std::string& word) {
    if (word.find(',') != std::string::npos) return split_on(word, ',');
    std::vector<std::string> out;
    for (char c : word) out.emplace_back(1, c);
    return out;
}

}  // namespace

Subject parse_subject(std::string_view text) {
    Subject s;
    std::vector<std::string> labels;
    std::map<std::string, std::size_t> seen;  // label -> line
    std::vector<std::pair<std::string, std::string>> relation;
    std::vector<std::pair<Token, std::size_t>> cover_tokens;
    std::vector<std::vector<std::string>> facets;
    bool have_elements = false, have_facets = false;

    std::size_t line_no = 0, pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        ++line_no;
        // A comment starts at a '#' that begins a word.
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '#' && (i == 0 || std::isspace(static_cast<unsigned char>(line[i - 1])))) {
                line = line.substr(0, i);
                break;
            }
        }
        auto words = split_words(line, 0);
        if (!words.empty()) {
            std::size_t colon = line.find(':');
            if (colon == std::string_view::npos)
                throw ParseError(line_no, words[0].column, "expected 'key:' at start of line");
            std::string key(line.substr(0, colon));
            key.erase(0, key.find_first_not_of(" \t"));
            key.erase(key.find_last_not_of(" \t\r") + 1);
            auto values = split_words(line.substr(colon + 1), colon + 1);
            if (key == "format") {
                if (values.size() != 2 || values[0].text != "zipcert-poset")
                    throw ParseError(line_no, colon + 2, "expected 'format: zipcert-poset <version>'");
                if (values[1].text != std::to_string(poset_format_version))
                    throw ParseError(line_no, values[1].column, "unsupported format version " + values[1].text);
            } else if (key == "name") {
                if (values.size() != 1) throw ParseError(line_no, colon + 2, "name must be a single word");
                s.name = values[0].text;
            } else if (key == "elements") {
                have_elements = true;
                for (const auto& v : values) {
                    try {
                        validate_label(v.text);
                    } catch (const PosetError& e) {
                        throw ParseError(line_no, v.column, e.what());
                    }
                    if (!seen.emplace(v.text, line_no).second)
                        throw ParseError(line_no, v.column, "duplicate label '" + v.text + "'");
                    labels.push_back(v.text);
                }
            } else if (key == "covers") {
                for (const auto& v : values) cover_tokens.emplace_back(v, line_no);
            } else if (key == "facets") {
                have_facets = true;
                for (const auto& v : values) {
                    auto verts = facet_vertices(v.text);
                    for (const auto& x : verts)
                        if (x.empty() || x.find('<') != std::string::npos)
                            throw ParseError(line_no, v.column, "bad facet '" + v.text + "'");
                    std::set<std::string> uniq(verts.begin(), verts.end());
                    if (uniq.size() != verts.size())
                        throw ParseError(line_no, v.column, "facet '" + v.text + "' repeats a vertex");
                    facets.push_back(std::move(verts));
                }
            } else {
                throw ParseError(line_no, words[0].column, "unknown key '" + key + "'");
            }
        }
        if (end == text.size()) break;
        pos = end + 1;
    }

    if (have_facets && (have_elements || !cover_tokens.empty()))
        throw ParseError(1, 1, "a file holds either facets or elements/covers, not both");
    if (have_facets) {
        s.complex = FacetComplex::from_facets(facets);
        s.poset = s.complex->face_poset();
        return s;
    }
    for (const auto& [tok, ln] : cover_tokens) {
        auto parts = split_on(tok.text, '<');
        if (parts.size() < 2) throw ParseError(ln, tok.column, "expected a<b, got '" + tok.text + "'");
        std::size_t col = tok.column;
        for (const auto& part : parts) {
            if (part.empty()) throw ParseError(ln, col, "empty element in '" + tok.text + "'");
            if (!seen.count(part)) throw ParseError(ln, col, "unknown element '" + part + "'");
            col += part.size() + 1;
        }
        for (std::size_t i = 0; i + 1 < parts.size(); ++i) relation.emplace_back(parts[i], parts[i + 1]);
    }
    s.poset = Poset::from_labeled_relation(labels, relation);
    return s;
}

Poset parse_poset(std::string_view text) { return parse_subject(text).poset; }

MonotoneMap parse_map(std::string_view text, const Poset& source, const Poset& target) {
    std::vector<std::pair<std::string, std::string>> pairs;
    std::size_t line_no = 0, pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        ++line_no;
        auto words = split_words(line, 0);
        if (!words.empty() && words[0].text[0] != '#') {
            if (words[0].text != "map:") throw ParseError(line_no, words[0].column, "expected 'map:'");
            for (std::size_t i = 1; i < words.size() && words[i].text[0] != '#'; ++i) {
                const auto& w = words[i];
                auto arrow = w.text.find("->");
                if (arrow == std::string::npos || arrow == 0 || arrow + 2 == w.text.size())
                    throw ParseError(line_no, w.column, "expected a->x, got '" + w.text + "'");
                std::string a = w.text.substr(0, arrow), x = w.text.substr(arrow + 2);
                if (!source.find(a)) throw ParseError(line_no, w.column, "unknown source element '" + a + "'");
                if (!target.find(x)) throw ParseError(line_no, w.column + arrow + 2, "unknown target element '" + x + "'");
                pairs.emplace_back(a, x);
            }
        }
        if (end == text.size()) break;
        pos = end + 1;
    }
    return MonotoneMap::from_labels(source, target, pairs);
}

FacetComplex parse_facets(std::string_view text) {
    Subject s = parse_subject(text);
    if (!s.complex) throw ParseError(1, 1, "no 'facets:' line");
    return *s.complex;
}

Subject read_subject_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PosetError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_subject(buf.str());
}

std::string write_poset(const Poset& p, const std::string& name) {
    auto order = linear_extension(p);
    std::vector<std::size_t> pos(p.size());
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    std::string out = "format: zipcert-poset " + std::to_string(poset_format_version) + "\n";
    if (!name.empty()) out += "name: " + name + "\n";
    out += "elements:";
    for (Index x : order) out += " " + p.label(x);
    out += "\ncovers:";
    auto covers = p.covers();
    std::sort(covers.begin(), covers.end(), [&](const Arrow& a, const Arrow& b) {
        return std::pair(pos[a.first], pos[a.second]) < std::pair(pos[b.first], pos[b.second]);
    });
    for (auto [a, b] : covers) out += " " + p.label(a) + "<" + p.label(b);
    return out + "\n";
}

std::string write_facets(const FacetComplex& k, const std::string& name) {
    std::vector<std::string> words;
    for (const Face& f : k.facets()) words.push_back(face_label(k.facet_labels(f)));
    std::sort(words.begin(), words.end());
    std::string out = "format: zipcert-poset " + std::to_string(poset_format_version) + "\n";
    if (!name.empty()) out += "name: " + name + "\n";
    out += "facets:";
    for (const auto& w : words) out += " " + w;
    return out + "\n";
}

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string subject_hash(const Poset& p) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(write_poset(p))));
    return buf;
}

// ---- Certificates ----------------------------------------------------------------

namespace {

Json envelope(const Poset& subject, const std::string& kind, Json payload) {
    return Json{{"format", "zipcert-certificate"},
                {"version", certificate_format_version},
                {"engine", engine_version},
                {"kind", kind},
                {"subject", subject_hash(subject)},
                {"payload", std::move(payload)}};
}

Json labels_json(const Poset& p, const Mask& m) {
    std::vector<std::string> out;
    for_each_bit(m, [&](Index i) { out.push_back(p.label(i)); });
    std::sort(out.begin(), out.end());
    return out;
}

template <class Step>
Json nested_json(const std::vector<Step>& seq, const char* head, std::string Step::*field) {
    Json arr = Json::array();
    for (const auto& s : seq)
        arr.push_back({{head, s.*field}, {"removed", s.removed}, {"sub", nested_json(s.sub, head, field)}});
    return arr;
}

[[noreturn]] void bad(const std::string& what) { throw CertificateError(what); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
    return j.at(key);
}

std::string str(const Json& j, const char* what) {
    if (!j.is_string()) bad(std::string(what) + " must be a string");
    return j.get<std::string>();
}

std::vector<std::string> strings(const Json& j, const char* what) {
    if (!j.is_array()) bad(std::string(what) + " must be an array");
    std::vector<std::string> out;
    for (const auto& x : j) out.push_back(str(x, what));
    return out;
}

Mask mask_from(const Poset& p, const Json& j) {
    Mask m = p.empty_mask();
    auto labels = strings(j, "elements");
    if (!std::is_sorted(labels.begin(), labels.end())) bad("element list is not sorted");
    for (const auto& l : labels) {
        auto x = p.find(l);
        if (!x) bad("unknown element '" + l + "'");
        if (m.test(*x)) bad("element '" + l + "' listed twice");
        m.set(*x);
    }
    return m;
}

template <class Step>
std::vector<Step> nested_from(const Json& j, const char* head, std::string Step::*field_ptr) {
    if (!j.is_array()) bad("steps must be an array");
    std::vector<Step> out;
    for (const auto& s : j) {
        Step step;
        step.*field_ptr = str(field(s, head), head);
        step.removed = strings(field(s, "removed"), "removed");
        step.sub = nested_from<Step>(field(s, "sub"), head, field_ptr);
        out.push_back(std::move(step));
    }
    return out;
}

// Facets as sorted vertex lists, in lexicographic order.
Json facets_json(const FacetComplex& k) {
    std::vector<std::vector<std::string>> facets;
    for (const Face& f : k.facets()) {
        auto labels = k.facet_labels(f);
        std::sort(labels.begin(), labels.end());
        facets.push_back(std::move(labels));
    }
    std::sort(facets.begin(), facets.end());
    return facets;
}

// Only the canonical encoding written by facets_json is accepted.
FacetComplex facets_from(const Json& j) {
    if (!j.is_array()) bad("target must be an array");
    std::vector<std::vector<std::string>> facets;
    for (const auto& f : j) {
        auto v = strings(f, "target facet");
        if (v.empty() || std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) != v.end())
            bad("target facet is not a strictly increasing vertex list");
        facets.push_back(std::move(v));
    }
    if (std::adjacent_find(facets.begin(), facets.end(), std::greater_equal<>()) != facets.end())
        bad("target facets are not strictly increasing");
    FacetComplex k = FacetComplex::from_facets(facets);
    if (k.facets().size() != facets.size()) bad("target lists a face that is not maximal");
    return k;
}

const Json& payload_of(const Json& cert, const std::string& kind) {
    if (str(field(cert, "kind"), "kind") != kind) bad("certificate is not of kind " + kind);
    return field(cert, "payload");
}

ZipGoal zip_goal_from(const std::string& s) {
    if (s == "singleton") return ZipGoal::singleton;
    if (s == "dual-cone") return ZipGoal::dual_cone;
    bad("unknown zip goal '" + s + "'");
}

ShellGoal shell_goal_from(const std::string& s) {
    if (s == "cone") return ShellGoal::cone;
    if (s == "empty") return ShellGoal::empty;
    bad("unknown shelling goal '" + s + "'");
}

}  // namespace

Json certificate_json(const Poset& subject, const ConstructionTree& t) {
    Json nodes = Json::array();
    for (const auto& n : t.nodes) {
        Json j{{"elements", labels_json(t.poset, n.mask)}};
        if (n.kind == ConstructionNode::Kind::cone) {
            j["kind"] = "cone";
            j["apex"] = t.poset.label(n.apex);
        } else {
            j["kind"] = "split";
            j["q"] = n.q;
            j["r"] = n.r;
            j["meet"] = n.meet;
        }
        nodes.push_back(std::move(j));
    }
    return envelope(subject, "construction", {{"nodes", nodes}});
}

Json certificate_json(const Poset& subject, const std::vector<ZipStep>& steps, ZipGoal goal) {
    Json arr = Json::array();
    for (const auto& s : steps) arr.push_back({s.p, s.q, s.r});
    return envelope(subject, "zipping", {{"goal", to_string(goal)}, {"steps", arr}});
}

Json certificate_json(const Poset& subject, const std::vector<ZipStep>& steps, const FacetComplex& target) {
    Json j = certificate_json(subject, steps, ZipGoal::singleton);
    j["payload"]["goal"] = "target";
    j["payload"]["target"] = facets_json(target);
    return j;
}

Json certificate_json(const Poset& subject, const std::vector<EdgeZipStep>& steps, const FacetComplex& target) {
    Json arr = Json::array();
    for (const auto& s : steps) arr.push_back({s.v, s.w});
    Json facets = facets_json(target);
    return envelope(subject, "edge-zipping", {{"target", facets}, {"steps", arr}});
}

Json certificate_json(const Poset& subject, const ShellSequence& seq, ShellGoal goal) {
    return envelope(subject, "shelling", {{"goal", to_string(goal)}, {"steps", nested_json(seq, "apex", &ShellStep::apex)}});
}

Json certificate_json(const Poset& subject, const std::optional<Mask>& target, const CollapseSequence& seq) {
    Json t = target ? labels_json(subject, *target) : Json(nullptr);
    return envelope(subject, "collapse", {{"target", t}, {"steps", nested_json(seq, "sigma", &CollapseStep::sigma)}});
}

Json certificate_json(const Poset& subject, const SimplicialCollapse& pairs, std::size_t remaining) {
    Json arr = Json::array();
    for (const auto& [a, b] : pairs) arr.push_back({a, b});
    return envelope(subject, "barycentric-collapse", {{"pairs", arr}, {"remaining", remaining}});
}

ConstructionTree construction_from_json(const Json& cert, const Poset& subject) {
    const Json& nodes = field(payload_of(cert, "construction"), "nodes");
    if (!nodes.is_array() || nodes.empty()) bad("nodes must be a nonempty array");
    ConstructionTree t{subject, {}};
    for (const auto& j : nodes) {
        ConstructionNode n;
        n.mask = mask_from(subject, field(j, "elements"));
        std::string kind = str(field(j, "kind"), "kind");
        if (kind == "cone") {
            n.kind = ConstructionNode::Kind::cone;
            auto a = subject.find(str(field(j, "apex"), "apex"));
            if (!a) bad("unknown apex");
            n.apex = *a;
        } else if (kind == "split") {
            n.kind = ConstructionNode::Kind::split;
            for (auto [key, slot] : {std::pair{"q", &n.q}, std::pair{"r", &n.r}, std::pair{"meet", &n.meet}}) {
                const Json& v = field(j, key);
                if (!v.is_number_integer()) bad(std::string(key) + " must be an integer");
                *slot = v.get<int>();
            }
        } else {
            bad("unknown node kind '" + kind + "'");
        }
        t.nodes.push_back(std::move(n));
    }
    return t;
}

std::vector<ZipStep> zipping_from_json(const Json& cert) {
    const Json& steps = field(payload_of(cert, "zipping"), "steps");
    if (!steps.is_array()) bad("steps must be an array");
    std::vector<ZipStep> out;
    for (const auto& s : steps) {
        auto v = strings(s, "zip step");
        if (v.size() != 3) bad("a zip step has three labels");
        out.push_back({v[0], v[1], v[2]});
    }
    return out;
}

std::vector<EdgeZipStep> edge_zipping_from_json(const Json& cert) {
    const Json& steps = field(payload_of(cert, "edge-zipping"), "steps");
    if (!steps.is_array()) bad("steps must be an array");
    std::vector<EdgeZipStep> out;
    for (const auto& s : steps) {
        auto v = strings(s, "edge");
        if (v.size() != 2) bad("an edge step has two vertices");
        // The surviving vertex is named first and is the smaller label.
        if (!(v[0] < v[1])) bad("edge step " + v[0] + v[1] + " is not in increasing order");
        out.push_back({v[0], v[1]});
    }
    return out;
}

CollapseSequence collapse_from_json(const Json& cert) {
    return nested_from<CollapseStep>(field(payload_of(cert, "collapse"), "steps"), "sigma", &CollapseStep::sigma);
}

CheckResult verify_certificate(const Json& cert, const Subject& subject) {
    try {
        if (str(field(cert, "format"), "format") != "zipcert-certificate") return CheckResult::fail("not a certificate");
        const Json& version = field(cert, "version");
        if (!version.is_number_integer() || version.get<int>() != certificate_format_version)
            return CheckResult::fail("unsupported certificate version");
        if (str(field(cert, "subject"), "subject") != subject_hash(subject.poset))
            return CheckResult::fail("subject hash does not match the poset");
        const Poset& p = subject.poset;
        std::string kind = str(field(cert, "kind"), "kind");
        const Json& payload = field(cert, "payload");
        if (kind == "construction") return verify_construction(construction_from_json(cert, p));
        if (kind == "zipping") {
            std::string goal = str(field(payload, "goal"), "goal");
            if (goal != "target") return verify_zipping(p, zipping_from_json(cert), zip_goal_from(goal));
            Poset end = replay_zipping(p, zipping_from_json(cert));
            if (!isomorphic(end, facets_from(field(payload, "target")).face_poset()))
                return CheckResult::fail("zipping does not end at the target");
            return CheckResult::pass();
        }
        if (kind == "edge-zipping") {
            if (!subject.complex) return CheckResult::fail("edge zipping needs a facet subject");
            return verify_edge_zipping(*subject.complex, edge_zipping_from_json(cert), facets_from(field(payload, "target")));
        }
        if (kind == "shelling") {
            auto seq = nested_from<ShellStep>(field(payload, "steps"), "apex", &ShellStep::apex);
            return verify_shelling(p, seq, shell_goal_from(str(field(payload, "goal"), "goal")));
        }
        if (kind == "collapse") {
            const Json& t = field(payload, "target");
            std::optional<Mask> target;
            if (!t.is_null()) target = mask_from(p, t);
            return verify_collapse(p, target, collapse_from_json(cert));
        }
        if (kind == "barycentric-collapse") {
            const Json& pairs = field(payload, "pairs");
            if (!pairs.is_array()) bad("pairs must be an array");
            SimplicialCollapse sc;
            for (const auto& pr : pairs) {
                auto v = strings(pr, "pair");
                if (v.size() != 2) bad("a collapse pair has two faces");
                sc.emplace_back(v[0], v[1]);
            }
            const Json& rem = field(payload, "remaining");
            if (!rem.is_number_unsigned()) bad("remaining must be a nonnegative integer");
            return verify_simplicial_collapse(barycentric(p), sc, rem.get<std::size_t>());
        }
        return CheckResult::fail("unknown certificate kind '" + kind + "'");
    } catch (const PosetError& e) {
        return CheckResult::fail(e.what());
    } catch (const Json::exception& e) {
        return CheckResult::fail(e.what());
    }
}

}  // namespace zipcert
