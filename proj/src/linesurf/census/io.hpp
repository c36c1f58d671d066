#ifndef LINESURF_CENSUS_IO_HPP
#define LINESURF_CENSUS_IO_HPP

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "linesurf/algebra/fields.hpp"
#include "linesurf/algebra/parse.hpp"
#include "linesurf/census/audit.hpp"
#include "linesurf/census/bounds.hpp"
#include "linesurf/error.hpp"
#include "linesurf/flecnodal/flecnodal.hpp"
#include "linesurf/lineenum/lineenum.hpp"

namespace linesurf {

using json = nlohmann::ordered_json;

inline constexpr const char *kCensusSchema = "linesurf.census";
inline constexpr int kCensusVersion = 1;

using AnyField = std::variant<Rationals, PrimeField, ExtField<PrimeField>, ExtField<Rationals>>;

// Field specs:
//   Q | F<q> | F<p>^<k>/<modulus in x> | Q^<k>/<modulus in x>
// F<q> with q = p^k, k >= 2, uses the first monic irreducible of degree k
// in the lexicographic enumeration.
AnyField parse_field_spec(std::string_view spec);

inline std::string field_name(const AnyField &f)
{
    return std::visit([](const auto &k) { return k.name(); }, f);
}

template <class F>
Surface<F> parse_surface(const F &field, std::string_view text)
{
    return Surface<F>(parse_poly(field, text, default_variable_names(4)));
}

// Lines file: one line per row "a0 a1 a2 a3 | b0 b1 b2 b3"; '#' starts a
// comment, blank rows are ignored.
template <class F>
std::vector<LineP3<F>> parse_lines_file(const F &field, std::string_view text)
{
    std::vector<LineP3<F>> out;
    std::size_t row = 0, pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string_view src = text.substr(pos, end - pos);
        ++row;
        pos = end + 1;
        if (const auto h = src.find('#'); h != std::string_view::npos)
            src = src.substr(0, h);
        std::vector<std::pair<std::string, std::size_t>> tokens; // text, column
        for (std::size_t i = 0; i < src.size();) {
            if (std::isspace(static_cast<unsigned char>(src[i]))) {
                ++i;
                continue;
            }
            const std::size_t start = i;
            if (src[i] == '|') {
                ++i;
            } else {
                while (i < src.size() && !std::isspace(static_cast<unsigned char>(src[i])) && src[i] != '|')
                    ++i;
            }
            tokens.emplace_back(std::string(src.substr(start, i - start)), start + 1);
        }
        if (tokens.empty())
            continue;
        auto where = [&](std::size_t col) { return std::to_string(row) + ":" + std::to_string(col); };
        if (tokens.size() != 9 || tokens[4].first != "|") {
            fail(Errc::parse, where(tokens.front().second) +
                                  ": expected 'a0 a1 a2 a3 | b0 b1 b2 b3', found " + std::to_string(tokens.size()) +
                                  " tokens");
        }
        Vec4<F> a, b;
        for (std::size_t i = 0; i < 9; ++i) {
            if (i == 4)
                continue;
            if (tokens[i].first == "|")
                fail(Errc::parse, where(tokens[i].second) + ": unexpected '|'");
            try {
                (i < 4 ? a[i] : b[i - 5]) = field.parse(tokens[i].first);
            } catch (const Error &e) {
                fail(Errc::parse, where(tokens[i].second) + ": " + e.what());
            }
        }
        try {
            out.push_back(LineP3<F>::through(field, a, b));
        } catch (const Error &e) {
            fail(Errc::parse, where(tokens.front().second) + ": " + e.what());
        }
    }
    return out;
}

template <class F>
std::string lines_to_text(const std::vector<LineP3<F>> &lines)
{
    std::string out;
    for (const auto &l : lines) {
        const F &k = l.field();
        for (std::size_t r = 0; r < 2; ++r) {
            if (r == 1)
                out += " |";
            for (std::size_t i = 0; i < 4; ++i) {
                out += (r == 0 && i == 0) ? "" : " ";
                out += k.to_string(l.rows()[r][i]);
            }
        }
        out += '\n';
    }
    return out;
}

inline std::string hex64(std::uint64_t v)
{
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << v;
    return os.str();
}

inline LineKind parse_line_kind(const std::string &s)
{
    if (s == "first")
        return LineKind::FirstKind;
    if (s == "second")
        return LineKind::SecondKind;
    if (s == "unclassified")
        return LineKind::Unclassified;
    fail(Errc::parse, "unknown line kind '" + s + "'");
}

inline LineSource parse_line_source(const std::string &s)
{
    if (s == "scan")
        return LineSource::Scan;
    if (s == "family")
        return LineSource::Family;
    if (s == "user")
        return LineSource::UserSupplied;
    fail(Errc::parse, "unknown line source '" + s + "'");
}

template <class F>
json flecnodal_summary(const FlecnodalData<F> &D)
{
    const F &k = D.surface.field();
    json j;
    json h = json::array();
    for (const auto &x : D.H.form())
        h.push_back(k.to_string(x));
    j["H"] = h;
    j["deg_R"] = D.degree_R();
    j["class_degree"] = D.class_degree;
    j["diagonal_multiplicity"] = D.diag_mult;
    j["seed"] = D.seed ? json(*D.seed) : json(nullptr);
    j["attempts"] = D.attempts;
    return j;
}

inline json smoothness_summary(const SmoothProbe &p)
{
    json j;
    j["smooth"] = p.smooth;
    j["k_max"] = p.k_max;
    if (p.witness) {
        j["witness"] = *p.witness;
        j["witness_field"] = p.witness_field;
        j["witness_degree"] = p.witness_degree;
    }
    return j;
}

// Census document: the census plus optional annotations ("flecnodal",
// "smoothness") carried through unchanged.
template <class F>
struct CensusDocument {
    Census<F> census;
    json annotations = json::object();
};

template <class F>
json census_to_json(const CensusDocument<F> &doc)
{
    const auto &c = doc.census;
    const F &k = c.surface.field();
    json j;
    j["schema"] = kCensusSchema;
    j["version"] = kCensusVersion;
    j["field"] = k.name();
    j["surface"] = {{"equation", c.surface.equation()},
                    {"degree", c.surface.degree()},
                    {"hash", hex64(c.surface.hash())}};
    j["candidates"] = c.candidates ? json(*c.candidates) : json(nullptr);
    j["count"] = c.size();
    json lines = json::array();
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto &r = c.records[i];
        json pl = json::array();
        for (const auto &x : r.line.plucker())
            pl.push_back(k.to_string(x));
        json l;
        l["plucker"] = pl;
        l["kind"] = to_string(r.kind);
        l["flec_mult"] = r.flec_mult ? json(*r.flec_mult) : json(nullptr);
        l["source"] = to_string(r.source);
        l["incidence_degree"] = c.incidence[i].size();
        lines.push_back(std::move(l));
    }
    j["lines"] = std::move(lines);
    for (const auto &[key, value] : doc.annotations.items())
        j[key] = value;
    return j;
}

template <class F>
std::string render_census(const CensusDocument<F> &doc)
{
    return census_to_json(doc).dump(2) + "\n";
}

inline json parse_json_text(std::string_view text)
{
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        fail(Errc::parse, std::string("census JSON: ") + e.what());
    }
}

inline json census_field(const json &j, const char *key)
{
    if (!j.is_object() || !j.contains(key))
        fail(Errc::parse, std::string("census JSON: missing field '") + key + "'");
    return j.at(key);
}

// Reads a census for X. The surface hash and field must match.
template <class F>
CensusDocument<F> census_from_json(const Surface<F> &X, const json &j)
{
    try {
        if (census_field(j, "schema") != kCensusSchema)
            fail(Errc::parse, "census JSON: schema is not " + std::string(kCensusSchema));
        if (census_field(j, "version") != kCensusVersion)
            fail(Errc::parse, "census JSON: unsupported version " + census_field(j, "version").dump());
        const F &k = X.field();
        if (census_field(j, "field").get<std::string>() != k.name())
            fail(Errc::precondition, "census field " + j.at("field").get<std::string>() + " does not match " + k.name());
        const auto surf = census_field(j, "surface");
        if (census_field(surf, "hash").get<std::string>() != hex64(X.hash()))
            fail(Errc::precondition, "census was computed for a different surface (" +
                                         census_field(surf, "equation").get<std::string>() + ")");
        CensusDocument<F> doc;
        std::vector<LineRecord<F>> records;
        for (const auto &l : census_field(j, "lines")) {
            const auto pl = census_field(l, "plucker");
            if (!pl.is_array() || pl.size() != 6)
                fail(Errc::parse, "census JSON: a Plucker vector needs 6 entries");
            Plucker<F> p;
            for (std::size_t i = 0; i < 6; ++i)
                p[i] = k.parse(pl[i].get<std::string>());
            LineRecord<F> r;
            r.line = LineP3<F>::from_plucker(k, p);
            r.kind = parse_line_kind(census_field(l, "kind").get<std::string>());
            const auto m = census_field(l, "flec_mult");
            if (!m.is_null())
                r.flec_mult = m.get<int>();
            r.source = parse_line_source(census_field(l, "source").get<std::string>());
            records.push_back(std::move(r));
        }
        const std::size_t n = records.size();
        doc.census = make_census(X, std::move(records));
        if (doc.census.size() != n)
            fail(Errc::inconsistent, "census JSON lists a line twice");
        const auto cand = census_field(j, "candidates");
        if (!cand.is_null())
            doc.census.candidates = cand.get<std::uint64_t>();
        for (const auto &[key, value] : j.items())
            if (key == "flecnodal" || key == "smoothness")
                doc.annotations[key] = value;
        return doc;
    } catch (const json::exception &e) {
        fail(Errc::parse, std::string("census JSON: ") + e.what());
    }
}

template <class F>
CensusDocument<F> parse_census(const Surface<F> &X, std::string_view text)
{
    return census_from_json(X, parse_json_text(text));
}

inline json bounds_to_json(const BoundsReport &b)
{
    json j;
    j["d"] = b.d;
    j["clebsch"] = b.clebsch;
    j["segre"] = b.segre;
    j["new_bound"] = b.new_bound;
    j["observed"] = b.observed ? json(*b.observed) : json(nullptr);
    return j;
}

inline json verdict_to_json(const Verdict &v)
{
    return {{"id", v.id},     {"statement", v.statement}, {"status", to_string(v.status)},
            {"value", v.value}, {"bound", v.bound},       {"detail", v.detail}};
}

template <class F>
json audit_to_json(const Census<F> &c, const AuditReport &r)
{
    json j;
    j["kind"] = "consistency check";
    j["field"] = c.surface.field().name();
    j["surface"] = c.surface.equation();
    j["d"] = r.d;
    j["deg_F"] = r.deg_F;
    j["ell"] = r.ell;
    j["deg_Z"] = r.deg_Z;
    j["ell1"] = r.ell1;
    j["ell2"] = r.ell2;
    j["multiplicity_sum"] = r.mult_sum;
    j["support_is_lines"] = r.support_is_lines;
    json lines = json::array();
    for (std::size_t i = 0; i < r.lines.size(); ++i) {
        const auto &n = r.lines[i];
        lines.push_back({{"line", c.records[i].line.to_string()},
                         {"kind", to_string(c.records[i].kind)},
                         {"flec_mult", *c.records[i].flec_mult},
                         {"meets", n.meets},
                         {"F_dot_L", n.F_dot_L},
                         {"self_int", n.self_int},
                         {"flec_minus_L_dot_L", n.flec_minus_L_dot_L},
                         {"Z_dot_L", n.Z_dot_L}});
    }
    j["lines"] = std::move(lines);
    json planes = json::array();
    for (const auto &p : r.planes) {
        planes.push_back({{"plane", p.form},
                          {"k", p.k()},
                          {"reduced_lines", p.reduced_lines},
                          {"other_lines", p.other_lines},
                          {"deg_Z_Pi", p.deg_Z_Pi ? json(*p.deg_Z_Pi) : json(nullptr)}});
    }
    j["spanned_planes"] = std::move(planes);
    json vs = json::array();
    for (const auto &v : r.verdicts)
        vs.push_back(verdict_to_json(v));
    j["verdicts"] = std::move(vs);
    json cs = json::array();
    for (const auto &v : r.checks)
        cs.push_back(verdict_to_json(v));
    j["checks"] = std::move(cs);
    j["all_hold"] = r.all_hold();
    return j;
}

} // namespace linesurf

#endif
