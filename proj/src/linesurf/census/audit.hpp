#ifndef LINESURF_CENSUS_AUDIT_HPP
#define LINESURF_CENSUS_AUDIT_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "linesurf/census/bounds.hpp"
#include "linesurf/error.hpp"
#include "linesurf/lineenum/lineenum.hpp"
#include "linesurf/projgeom/projgeom.hpp"

namespace linesurf {

enum class VerdictStatus { Holds, Fails, Vacuous, NotEvaluable };

inline const char *to_string(VerdictStatus s)
{
    switch (s) {
    case VerdictStatus::Holds:
        return "holds";
    case VerdictStatus::Fails:
        return "fails";
    case VerdictStatus::Vacuous:
        return "vacuous";
    default:
        return "not-evaluable";
    }
}

// One evaluated inequality: value >= bound unless noted in the detail.
struct Verdict {
    std::string id;
    std::string statement;
    VerdictStatus status = VerdictStatus::NotEvaluable;
    std::string value; // exact rational strings
    std::string bound;
    std::string detail;
};

inline Verdict compare_at_least(std::string id, std::string statement, const mpq_class &value, const mpq_class &bound,
                                std::string detail = {})
{
    Verdict v{std::move(id), std::move(statement), value >= bound ? VerdictStatus::Holds : VerdictStatus::Fails,
              value.get_str(), bound.get_str(), std::move(detail)};
    return v;
}

inline Verdict not_evaluable(std::string id, std::string statement, std::string missing)
{
    return {std::move(id), std::move(statement), VerdictStatus::NotEvaluable, "", "", "missing input: " + missing};
}

struct IntersectionNumbers {
    std::int64_t F_dot_L = 0;             // 11d - 24
    std::int64_t self_int = 0;            // -(d - 2)
    std::int64_t flec_minus_L_dot_L = 0;  // 12d - 26
    std::int64_t Z_dot_L = 0;             // (11d - 24) - #{other census lines meeting L} + (d - 2)
    std::int64_t meets = 0;
};

template <class F>
void require_measured(const Census<F> &c)
{
    std::string missing;
    int n = 0;
    for (const auto &r : c.records)
        if (r.kind == LineKind::Unclassified || !r.flec_mult) {
            if (n < 8)
                missing += (missing.empty() ? "" : ", ") + r.line.to_string();
            ++n;
        }
    if (n > 0)
        fail(Errc::incomplete_input, std::to_string(n) + " census line(s) lack a kind or multiplicity: " + missing +
                                         (n > 8 ? ", ..." : ""));
}

template <class F>
IntersectionNumbers intersection_numbers(const Census<F> &c, std::size_t index)
{
    if (index >= c.records.size())
        fail(Errc::precondition, "intersection_numbers: line index out of range");
    if (!c.records[index].flec_mult)
        fail(Errc::incomplete_input, "intersection_numbers: line " + c.records[index].line.to_string() +
                                         " has no flecnodal multiplicity");
    const std::int64_t d = c.surface.degree();
    IntersectionNumbers r;
    r.F_dot_L = 11 * d - 24;
    r.self_int = -(d - 2);
    r.flec_minus_L_dot_L = 12 * d - 26;
    r.meets = static_cast<std::int64_t>(c.incidence[index].size());
    r.Z_dot_L = r.F_dot_L - r.meets + (d - 2);
    return r;
}

struct SpannedPlane {
    std::vector<std::string> form;    // plane equation, exact strings
    std::vector<int> reduced_lines;   // census indices of reduced lines in the plane
    std::vector<int> other_lines;     // census indices of non-reduced lines in the plane
    std::optional<std::int64_t> deg_Z_Pi;
    int k() const { return static_cast<int>(reduced_lines.size()); }
};

struct AuditReport {
    std::int64_t d = 0;
    std::int64_t deg_F = 0;
    std::int64_t ell = 0;
    std::int64_t deg_Z = 0;
    std::int64_t ell1 = 0; // reduced lines
    std::int64_t ell2 = 0; // lines of multiplicity > 1
    std::int64_t mult_sum = 0;
    bool support_is_lines = false; // sum of multiplicities equals deg F
    std::vector<IntersectionNumbers> lines;
    std::vector<SpannedPlane> planes;
    std::vector<Verdict> verdicts; // core verdicts
    std::vector<Verdict> checks;   // per-line and per-plane consistency checks

    bool all_hold() const
    {
        auto ok = [](const Verdict &v) { return v.status != VerdictStatus::Fails; };
        return std::all_of(verdicts.begin(), verdicts.end(), ok) && std::all_of(checks.begin(), checks.end(), ok);
    }
};

// Quantities consumed by the individual inequalities; absent values make
// the corresponding item not evaluable.
struct InequalityParams {
    std::optional<std::int64_t> d, k, h, q, q1, q2, deg_Z, deg_Z_Pi, ell2;
    std::optional<std::int64_t> Z_dot_sum;          // Z . (L1 + ... + Lk)
    std::optional<bool> three_2_spanned_planes;     // along one reduced line
    std::optional<bool> two_3_spanned_planes;       // along one reduced line
};

inline std::vector<Verdict> line_plane_inequalities(const InequalityParams &p)
{
    std::vector<Verdict> out;
    const auto &d = p.d;
    const auto &dz = p.deg_Z;
    auto need = [](std::initializer_list<std::pair<const char *, bool>> items) {
        std::string miss;
        for (const auto &[name, present] : items)
            if (!present)
                miss += (miss.empty() ? "" : ", ") + std::string(name);
        return miss;
    };

    {
        const char *id = "main_bound", *st = "deg Z >= 6(d-3)";
        auto miss = need({{"d", bool(d)}, {"deg_Z", bool(dz)}});
        out.push_back(miss.empty() ? compare_at_least(id, st, *dz, 6 * (*d - 3)) : not_evaluable(id, st, miss));
    }
    {
        const char *id = "multiple_lines", *st = "deg Z >= l2";
        auto miss = need({{"deg_Z", bool(dz)}, {"l2", bool(p.ell2)}});
        out.push_back(miss.empty() ? compare_at_least(id, st, *dz, *p.ell2) : not_evaluable(id, st, miss));
    }
    {
        const char *id = "plane_degree", *st = "deg Z >= Z.(L1+...+Lk) - (k-1) deg Z_Pi";
        auto miss = need({{"deg_Z", bool(dz)}, {"k", bool(p.k)}, {"Z_dot_sum", bool(p.Z_dot_sum)},
                          {"deg_Z_Pi", bool(p.deg_Z_Pi)}});
        out.push_back(miss.empty() ? compare_at_least(id, st, *dz, *p.Z_dot_sum - (*p.k - 1) * *p.deg_Z_Pi)
                                   : not_evaluable(id, st, miss));
    }
    {
        const char *id = "plane_reduced", *st = "deg Z >= 4k(d-3) - (k-1) deg Z_Pi";
        auto miss = need({{"d", bool(d)}, {"deg_Z", bool(dz)}, {"k", bool(p.k)}, {"deg_Z_Pi", bool(p.deg_Z_Pi)}});
        out.push_back(miss.empty() ? compare_at_least(id, st, *dz, 4 * *p.k * (*d - 3) - (*p.k - 1) * *p.deg_Z_Pi)
                                   : not_evaluable(id, st, miss));
    }
    {
        const char *id = "plane_implication", *st = "if deg Z_Pi <= (4k-h)(d-3)/(k-1) then deg Z >= h(d-3)";
        auto miss = need({{"d", bool(d)}, {"deg_Z", bool(dz)}, {"k", bool(p.k)}, {"h", bool(p.h)},
                          {"deg_Z_Pi", bool(p.deg_Z_Pi)}});
        if (!miss.empty()) {
            out.push_back(not_evaluable(id, st, miss));
        } else if (*p.k < 2 || *p.h > 4 * *p.k || *p.h < 1) {
            out.push_back({id, st, VerdictStatus::NotEvaluable, "", "", "requires k >= 2 and 1 <= h <= 4k"});
        } else {
            const mpq_class threshold(mpz_class(static_cast<long>((4 * *p.k - *p.h) * (*d - 3))),
                                      mpz_class(static_cast<long>(*p.k - 1)));
            mpq_class t = threshold;
            t.canonicalize();
            if (mpq_class(static_cast<long>(*p.deg_Z_Pi)) <= t)
                out.push_back(compare_at_least(id, st, *dz, *p.h * (*d - 3), "hypothesis holds: deg Z_Pi <= " + t.get_str()));
            else
                out.push_back({id, st, VerdictStatus::Vacuous, std::to_string(*p.deg_Z_Pi), t.get_str(),
                               "hypothesis fails: deg Z_Pi > " + t.get_str()});
        }
    }
    {
        const char *id = "spanned_planes", *st =
            "three 2-spanned or two 3-spanned planes along a reduced line imply deg Z >= 6(d-3)";
        auto miss = need({{"d", bool(d)}, {"deg_Z", bool(dz)},
                          {"plane configuration", bool(p.three_2_spanned_planes) || bool(p.two_3_spanned_planes)}});
        if (!miss.empty())
            out.push_back(not_evaluable(id, st, miss));
        else if (p.three_2_spanned_planes.value_or(false) || p.two_3_spanned_planes.value_or(false))
            out.push_back(compare_at_least(id, st, *dz, 6 * (*d - 3), "configuration present"));
        else
            out.push_back({id, st, VerdictStatus::Vacuous, "", "", "configuration absent"});
    }
    {
        const char *id = "reduced_line_q", *st = "deg Z >= (6d-13) - q/2";
        auto miss = need({{"d", bool(d)}, {"deg_Z", bool(dz)}, {"q", bool(p.q)}});
        if (miss.empty()) {
            mpq_class b = mpq_class(static_cast<long>(6 * *d - 13)) - mpq_class(static_cast<long>(*p.q), 2);
            b.canonicalize();
            out.push_back(compare_at_least(id, st, *dz, b));
        } else {
            out.push_back(not_evaluable(id, st, miss));
        }
    }
    {
        const char *id = "reduced_line_q1q2", *st = "deg Z >= (12d-26) - (q1+q2)";
        auto miss = need({{"d", bool(d)}, {"deg_Z", bool(dz)}, {"q1", bool(p.q1)}, {"q2", bool(p.q2)}});
        out.push_back(miss.empty() ? compare_at_least(id, st, *dz, 12 * *d - 26 - (*p.q1 + *p.q2))
                                   : not_evaluable(id, st, miss));
    }
    return out;
}

template <class F>
AuditReport audit_census(const Census<F> &c)
{
    require_measured(c);
    const F &k = c.surface.field();
    const std::int64_t d = c.surface.degree();
    const auto b = bounds(d);
    AuditReport r;
    r.d = d;
    r.deg_F = b.clebsch;
    r.ell = static_cast<std::int64_t>(c.size());
    r.deg_Z = r.deg_F - r.ell;
    for (const auto &rec : c.records) {
        const int m = *rec.flec_mult;
        (m == 1 ? r.ell1 : r.ell2)++;
        r.mult_sum += m;
    }
    r.support_is_lines = r.mult_sum == r.deg_F;
    for (std::size_t i = 0; i < c.size(); ++i)
        r.lines.push_back(intersection_numbers(c, i));

    auto reduced = [&](std::size_t i) { return *c.records[i].flec_mult == 1; };

    // Planes spanned by two meeting reduced lines.
    std::map<std::vector<std::string>, std::size_t> plane_index;
    std::vector<PlaneP3<F>> plane_objs;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (!reduced(i))
            continue;
        for (int j : c.incidence[i]) {
            if (static_cast<std::size_t>(j) <= i || !reduced(static_cast<std::size_t>(j)))
                continue;
            const auto plane = plane_through(c.records[i].line, c.records[static_cast<std::size_t>(j)].line);
            std::vector<std::string> key;
            for (const auto &x : plane.form())
                key.push_back(k.to_string(x));
            if (plane_index.emplace(key, plane_objs.size()).second) {
                plane_objs.push_back(plane);
                SpannedPlane sp;
                sp.form = key;
                r.planes.push_back(std::move(sp));
            }
        }
    }
    for (std::size_t p = 0; p < plane_objs.size(); ++p) {
        auto &sp = r.planes[p];
        std::int64_t dz = 0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (!plane_objs[p].contains(c.records[i].line))
                continue;
            (reduced(i) ? sp.reduced_lines : sp.other_lines).push_back(static_cast<int>(i));
            dz += *c.records[i].flec_mult - 1;
        }
        if (r.support_is_lines)
            sp.deg_Z_Pi = dz;
    }

    const mpq_class dZ(static_cast<long>(r.deg_Z));
    r.verdicts.push_back(compare_at_least("main_bound", "deg Z >= 6(d-3)", dZ, 6 * (d - 3)));
    {
        Verdict v{"first_kind_incidence", "every first-kind line meets at most 8d-14 census lines",
                  VerdictStatus::Holds, "", std::to_string(8 * d - 14), ""};
        std::int64_t worst = 0;
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c.records[i].kind == LineKind::FirstKind) {
                worst = std::max(worst, r.lines[i].meets);
                if (r.lines[i].meets > 8 * d - 14) {
                    v.status = VerdictStatus::Fails;
                    v.detail += (v.detail.empty() ? "" : "; ") + c.records[i].line.to_string() + " meets " +
                                std::to_string(r.lines[i].meets);
                }
            }
        v.value = std::to_string(worst);
        v.detail = v.detail.empty() ? "value is the largest first-kind incidence degree" : v.detail;
        r.verdicts.push_back(std::move(v));
    }
    r.verdicts.push_back(compare_at_least("multiple_lines", "deg Z >= l2", dZ, r.ell2));
    {
        Verdict v{"total_bound", "census size <= 11d^2 - 30d + 18",
                  r.ell <= b.new_bound ? VerdictStatus::Holds : VerdictStatus::Fails, std::to_string(r.ell),
                  std::to_string(b.new_bound), "value is at most bound"};
        r.verdicts.push_back(std::move(v));
    }
    {
        Verdict v{"multiplicity_sum", "sum of line multiplicities <= deg F",
                  r.mult_sum <= r.deg_F ? VerdictStatus::Holds : VerdictStatus::Fails, std::to_string(r.mult_sum),
                  std::to_string(r.deg_F), "value is at most bound"};
        r.verdicts.push_back(std::move(v));
    }
    {
        Verdict v{"second_kind_multiplicity", "every second-kind line has multiplicity >= 2", VerdictStatus::Holds,
                  "", "2", ""};
        for (const auto &rec : c.records)
            if (rec.kind == LineKind::SecondKind && *rec.flec_mult < 2) {
                v.status = VerdictStatus::Fails;
                v.detail += (v.detail.empty() ? "" : "; ") + rec.line.to_string();
            }
        r.verdicts.push_back(std::move(v));
    }

    // Per-line checks on reduced first-kind lines.
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto &rec = c.records[i];
        const std::string name = rec.line.to_string();
        if (rec.kind != LineKind::FirstKind || !reduced(i))
            continue;
        r.checks.push_back(compare_at_least("line_Z_dot_L", "Z.L >= 4(d-3) for " + name, r.lines[i].Z_dot_L, 4 * (d - 3)));
        std::int64_t q1 = 0, q2 = 0;
        for (int j : c.incidence[i])
            (reduced(static_cast<std::size_t>(j)) ? q1 : q2)++;
        InequalityParams p;
        p.d = d;
        p.deg_Z = r.deg_Z;
        p.q = q1;
        p.q1 = q1;
        p.q2 = q2;
        // Planes through this line.
        int two = 0, three = 0;
        for (const auto &sp : r.planes)
            if (std::find(sp.reduced_lines.begin(), sp.reduced_lines.end(), static_cast<int>(i)) != sp.reduced_lines.end()) {
                two += sp.k() >= 2;
                three += sp.k() >= 3;
            }
        p.three_2_spanned_planes = two >= 3;
        p.two_3_spanned_planes = three >= 2;
        for (auto &v : line_plane_inequalities(p)) {
            if (v.id != "reduced_line_q" && v.id != "reduced_line_q1q2" && v.id != "spanned_planes")
                continue;
            v.statement += " for " + name;
            r.checks.push_back(std::move(v));
        }
    }
    // Per-plane checks.
    for (const auto &sp : r.planes) {
        if (sp.k() > d)
            continue;
        InequalityParams p;
        p.d = d;
        p.deg_Z = r.deg_Z;
        p.k = sp.k();
        p.deg_Z_Pi = sp.deg_Z_Pi;
        std::string name = "(";
        for (std::size_t j = 0; j < sp.form.size(); ++j)
            name += (j ? "," : "") + sp.form[j];
        name += ")";
        for (auto &v : line_plane_inequalities(p)) {
            if (v.id != "plane_reduced")
                continue;
            v.statement += " for plane " + name;
            r.checks.push_back(std::move(v));
        }
    }
    return r;
}

} // namespace linesurf

#endif
