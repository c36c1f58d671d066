#include "linesurf/linesurf.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <variant>

#include "linesurf/census/audit.hpp"
#include "linesurf/census/bounds.hpp"
#include "linesurf/census/io.hpp"
#include "linesurf/flecnodal/flecnodal.hpp"
#include "linesurf/lineenum/lineenum.hpp"

using namespace linesurf;

using AnySurface = std::variant<Surface<Rationals>, Surface<PrimeField>, Surface<ExtField<PrimeField>>,
                                Surface<ExtField<Rationals>>>;
using AnyCensus = std::variant<CensusDocument<Rationals>, CensusDocument<PrimeField>,
                               CensusDocument<ExtField<PrimeField>>, CensusDocument<ExtField<Rationals>>>;

struct lsf_surface {
    AnySurface s;
};

struct lsf_census {
    AnyCensus doc;
};

namespace {

thread_local std::string last_error;

template <class Fn>
lsf_status guard(Fn &&fn)
{
    try {
        last_error.clear();
        fn();
        return LSF_OK;
    } catch (const Error &e) {
        last_error = e.what();
        return static_cast<lsf_status>(static_cast<int>(e.code()));
    } catch (const std::bad_alloc &) {
        last_error = "out of memory";
    } catch (const std::exception &e) {
        last_error = e.what();
    } catch (...) {
        last_error = "unknown failure";
    }
    return LSF_ERR_INTERNAL;
}

void require(const void *p, const char *what)
{
    if (p == nullptr)
        fail(Errc::precondition, std::string(what) + " must not be NULL");
}

char *dup_string(const std::string &s)
{
    auto *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (out == nullptr)
        throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <class F>
lsf_census *wrap(Census<F> c)
{
    return new lsf_census{AnyCensus{CensusDocument<F>{std::move(c), json::object()}}};
}

template <class F>
void check_flecnodal(const Census<F> &c, const FlecnodalData<F> &D)
{
    const int d = c.surface.degree();
    if (D.degree_R() != eliminant_degree(d))
        fail(Errc::inconsistent, "eliminant has degree " + std::to_string(D.degree_R()) + ", expected " +
                                     std::to_string(eliminant_degree(d)));
    std::int64_t sum = 0;
    for (const auto &r : c.records) {
        if (!r.flec_mult || *r.flec_mult < 1)
            fail(Errc::inconsistent, "line " + r.line.to_string() + " has no positive multiplicity");
        if (r.kind == LineKind::SecondKind && *r.flec_mult < 2)
            fail(Errc::inconsistent, "second-kind line " + r.line.to_string() + " has multiplicity 1");
        sum += *r.flec_mult;
    }
    if (sum > bounds(d).clebsch)
        fail(Errc::inconsistent, "multiplicities sum to " + std::to_string(sum) + " > deg F = " +
                                     std::to_string(bounds(d).clebsch));
}

} // namespace

extern "C" {

const char *lsf_version(void) { return "1.0.0"; }

const char *lsf_last_error(void) { return last_error.c_str(); }

void lsf_string_free(char *s) { std::free(s); }

lsf_status lsf_surface_parse(const char *field_spec, const char *equation, lsf_surface **out)
{
    return guard([&] {
        require(field_spec, "field_spec");
        require(equation, "equation");
        require(out, "out");
        *out = nullptr;
        const auto field = parse_field_spec(field_spec);
        *out = std::visit([&](const auto &k) { return new lsf_surface{AnySurface{parse_surface(k, equation)}}; }, field);
    });
}

void lsf_surface_free(lsf_surface *s) { delete s; }

int lsf_surface_degree(const lsf_surface *s)
{
    if (s == nullptr)
        return -1;
    return std::visit([](const auto &X) { return X.degree(); }, s->s);
}

lsf_status lsf_surface_field(const lsf_surface *s, char **out)
{
    return guard([&] {
        require(s, "surface");
        require(out, "out");
        *out = dup_string(std::visit([](const auto &X) { return X.field().name(); }, s->s));
    });
}

lsf_status lsf_surface_equation(const lsf_surface *s, char **out)
{
    return guard([&] {
        require(s, "surface");
        require(out, "out");
        *out = dup_string(std::visit([](const auto &X) { return X.equation(); }, s->s));
    });
}

lsf_status lsf_smoothness_probe(const lsf_surface *s, int k_max, char **json_out)
{
    return guard([&] {
        require(s, "surface");
        require(json_out, "json_out");
        const auto p = std::visit([&](const auto &X) { return smoothness_probe(X, k_max); }, s->s);
        *json_out = dup_string(smoothness_summary(p).dump(2) + "\n");
    });
}

lsf_status lsf_scan(const lsf_surface *s, unsigned jobs, lsf_census **out)
{
    return guard([&] {
        require(s, "surface");
        require(out, "out");
        *out = nullptr;
        *out = std::visit([&](const auto &X) { return wrap(enumerate_lines(X, jobs)); }, s->s);
    });
}

lsf_status lsf_verify_lines(const lsf_surface *s, const char *lines_text, lsf_census **out, char **rejected_json)
{
    return guard([&] {
        require(s, "surface");
        require(lines_text, "lines_text");
        require(out, "out");
        *out = nullptr;
        std::visit(
            [&](const auto &X) {
                const auto candidates = parse_lines_file(X.field(), lines_text);
                auto r = verify_census(X, candidates, LineSource::UserSupplied);
                if (rejected_json != nullptr) {
                    json rej = json::array();
                    for (const auto &x : r.rejected)
                        rej.push_back({{"line", x.line.to_string()},
                                       {"restriction", x.restriction}});
                    *rejected_json = dup_string(rej.dump(2) + "\n");
                }
                *out = wrap(std::move(r.census));
            },
            s->s);
    });
}

lsf_status lsf_fermat_lines(const char *field_spec, int d, char **lines_text)
{
    return guard([&] {
        require(field_spec, "field_spec");
        require(lines_text, "lines_text");
        const auto field = parse_field_spec(field_spec);
        *lines_text = dup_string(std::visit([&](const auto &k) { return lines_to_text(fermat_lines(d, k)); }, field));
    });
}

lsf_status lsf_census_field_spec(const char *text, char **out)
{
    return guard([&] {
        require(text, "json");
        require(out, "out");
        const auto j = parse_json_text(text);
        const auto f = census_field(j, "field");
        if (!f.is_string())
            fail(Errc::parse, "census JSON: 'field' must be a string");
        *out = dup_string(f.get<std::string>());
    });
}

lsf_status lsf_census_parse(const lsf_surface *s, const char *text, lsf_census **out)
{
    return guard([&] {
        require(s, "surface");
        require(text, "json");
        require(out, "out");
        *out = nullptr;
        *out = std::visit([&](const auto &X) { return new lsf_census{AnyCensus{parse_census(X, text)}}; }, s->s);
    });
}

lsf_status lsf_census_render(const lsf_census *c, char **json_out)
{
    return guard([&] {
        require(c, "census");
        require(json_out, "json_out");
        *json_out = dup_string(std::visit([](const auto &doc) { return render_census(doc); }, c->doc));
    });
}

void lsf_census_free(lsf_census *c) { delete c; }

size_t lsf_census_size(const lsf_census *c)
{
    if (c == nullptr)
        return 0;
    return std::visit([](const auto &doc) { return doc.census.size(); }, c->doc);
}

lsf_status lsf_census_summary(const lsf_census *c, size_t *first, size_t *second, size_t *unclassified,
                              int64_t *mult_sum)
{
    return guard([&] {
        require(c, "census");
        std::size_t n1 = 0, n2 = 0, n0 = 0;
        std::int64_t m = 0;
        std::visit(
            [&](const auto &doc) {
                for (const auto &r : doc.census.records) {
                    n1 += r.kind == LineKind::FirstKind;
                    n2 += r.kind == LineKind::SecondKind;
                    n0 += r.kind == LineKind::Unclassified;
                    m += r.flec_mult.value_or(0);
                }
            },
            c->doc);
        if (first)
            *first = n1;
        if (second)
            *second = n2;
        if (unclassified)
            *unclassified = n0;
        if (mult_sum)
            *mult_sum = m;
    });
}

lsf_status lsf_classify(lsf_census *c, unsigned jobs)
{
    return guard([&] {
        require(c, "census");
        std::visit([&](auto &doc) { classify_census(doc.census, nullptr, jobs); }, c->doc);
    });
}

lsf_status lsf_flecnodal(lsf_census *c, uint64_t seed, unsigned jobs)
{
    return guard([&] {
        require(c, "census");
        std::visit(
            [&](auto &doc) {
                auto &census = doc.census;
                std::vector<std::remove_cvref_t<decltype(census.records.front().line)>> avoid;
                for (const auto &r : census.records)
                    avoid.push_back(r.line);
                const auto D = flecnodal_resultant(census.surface, seed, avoid);
                classify_census(census, &D, jobs);
                doc.annotations["flecnodal"] = flecnodal_summary(D);
                check_flecnodal(census, D);
            },
            c->doc);
    });
}

lsf_status lsf_audit(const lsf_census *c, char **json_out, int *all_hold)
{
    return guard([&] {
        require(c, "census");
        require(json_out, "json_out");
        std::visit(
            [&](const auto &doc) {
                const auto r = audit_census(doc.census);
                *json_out = dup_string(audit_to_json(doc.census, r).dump(2) + "\n");
                if (all_hold)
                    *all_hold = r.all_hold() ? 1 : 0;
            },
            c->doc);
    });
}

lsf_status lsf_bounds(int64_t d, char **json_out)
{
    return guard([&] {
        require(json_out, "json_out");
        *json_out = dup_string(bounds_to_json(bounds(d)).dump(2) + "\n");
    });
}

} // extern "C"
