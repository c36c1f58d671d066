#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "linesurf/linesurf.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitVerdict = 2;

const char *status_name(lsf_status s)
{
    switch (s) {
    case LSF_OK:
        return "ok";
    case LSF_ERR_STRUCTURAL:
        return "structural";
    case LSF_ERR_DEGENERATE:
        return "degenerate";
    case LSF_ERR_UNSUPPORTED:
        return "unsupported";
    case LSF_ERR_CHAR_GATE:
        return "char-gate";
    case LSF_ERR_NOT_ON_SURFACE:
        return "not-on-surface";
    case LSF_ERR_SINGULAR_POINT:
        return "singular-point";
    case LSF_ERR_PRECONDITION:
        return "precondition";
    case LSF_ERR_PARSE:
        return "parse";
    case LSF_ERR_INCONSISTENT:
        return "inconsistent";
    case LSF_ERR_TRUNCATION_CAP:
        return "truncation-cap";
    case LSF_ERR_INCOMPLETE_INPUT:
        return "incomplete-input";
    case LSF_ERR_IO:
        return "io";
    case LSF_ERR_EXTENSION_REQUIRED:
        return "extension-required";
    default:
        return "internal";
    }
}

// Thrown to unwind to main with an exit code after reporting.
struct Exit {
    int code;
};

void check(lsf_status s, const std::string &context = {})
{
    if (s == LSF_OK)
        return;
    std::cerr << "linesurf: error[" << status_name(s) << "]: " << (context.empty() ? "" : context + ": ")
              << lsf_last_error() << "\n";
    const bool verdict = s == LSF_ERR_INCONSISTENT || s == LSF_ERR_TRUNCATION_CAP;
    throw Exit{verdict ? kExitVerdict : kExitInput};
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "linesurf: error[io]: cannot read " << path << "\n";
        throw Exit{kExitInput};
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_output(const std::string &text, const std::string &path)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        std::cerr << "linesurf: error[io]: cannot write " << path << "\n";
        throw Exit{kExitInput};
    }
}

struct StringDeleter {
    void operator()(char *s) const { lsf_string_free(s); }
};
struct SurfaceDeleter {
    void operator()(lsf_surface *s) const { lsf_surface_free(s); }
};
struct CensusDeleter {
    void operator()(lsf_census *c) const { lsf_census_free(c); }
};
using String = std::unique_ptr<char, StringDeleter>;
using SurfacePtr = std::unique_ptr<lsf_surface, SurfaceDeleter>;
using CensusPtr = std::unique_ptr<lsf_census, CensusDeleter>;

std::string take(char *s)
{
    String owned(s);
    return owned ? std::string(owned.get()) : std::string();
}

SurfacePtr load_surface(const std::string &path, const std::string &field)
{
    const auto text = read_file(path);
    lsf_surface *s = nullptr;
    check(lsf_surface_parse(field.c_str(), text.c_str(), &s), path);
    return SurfacePtr(s);
}

// Surface and census, with the field taken from the census unless given.
std::pair<SurfacePtr, CensusPtr> load_census(const std::string &surface_path, const std::string &census_path,
                                             std::string field)
{
    const auto text = read_file(census_path);
    char *spec = nullptr;
    check(lsf_census_field_spec(text.c_str(), &spec), census_path);
    const std::string recorded = take(spec);
    if (field.empty())
        field = recorded;
    auto surface = load_surface(surface_path, field);
    lsf_census *c = nullptr;
    check(lsf_census_parse(surface.get(), text.c_str(), &c), census_path);
    return {std::move(surface), CensusPtr(c)};
}

std::string render(const lsf_census *c)
{
    char *out = nullptr;
    check(lsf_census_render(c, &out));
    return take(out);
}

void summarize(const lsf_census *c)
{
    std::size_t first = 0, second = 0, unclassified = 0;
    std::int64_t sum = 0;
    check(lsf_census_summary(c, &first, &second, &unclassified, &sum));
    std::cerr << "lines: " << lsf_census_size(c);
    if (unclassified < lsf_census_size(c))
        std::cerr << " (first kind " << first << ", second kind " << second << ", multiplicity sum " << sum << ")";
    std::cerr << "\n";
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Lines on smooth surfaces in P^3: enumeration, flecnodal classification and audits"};
    app.set_version_flag("--version", std::string(lsf_version()));
    app.require_subcommand(1);

    std::string surface_path, census_path, lines_path, field, out_path;
    unsigned jobs = 0;
    std::uint64_t seed = 1;
    std::int64_t degree = 0;
    int k_max = 1;
    bool quiet = false;
    app.add_flag("-q,--quiet", quiet, "Suppress the summary on stderr");

    auto *bounds = app.add_subcommand("bounds", "Closed-form line bounds for degree d");
    bounds->add_option("d", degree, "Surface degree (>= 3)")->required();

    auto *scan = app.add_subcommand("scan", "Enumerate all lines over a finite field");
    scan->add_option("surface", surface_path, "File holding the surface equation")->required();
    scan->add_option("--field", field, "Field spec, e.g. F17 or F3^2/x^2+1")->required();
    scan->add_option("--jobs", jobs, "Worker threads (0 = all cores)");
    scan->add_option("-o,--out", out_path, "Write the census here instead of stdout");

    auto *verify = app.add_subcommand("verify", "Check candidate lines and build a census from them");
    verify->add_option("surface", surface_path, "File holding the surface equation")->required();
    verify->add_option("--lines", lines_path, "Lines file, rows 'a0 a1 a2 a3 | b0 b1 b2 b3'")->required();
    verify->add_option("--field", field, "Field spec")->required();
    verify->add_option("-o,--out", out_path, "Write the census here instead of stdout");

    auto *classify = app.add_subcommand("classify", "Set the kind of every census line");
    classify->add_option("surface", surface_path, "File holding the surface equation")->required();
    classify->add_option("--census", census_path, "Census JSON")->required();
    classify->add_option("--field", field, "Override the field recorded in the census");
    classify->add_option("--jobs", jobs, "Worker threads (0 = all cores)");
    classify->add_option("-o,--out", out_path, "Write the census here instead of stdout");

    auto *flec = app.add_subcommand("flecnodal", "Flecnodal eliminant, kinds and line multiplicities");
    flec->add_option("surface", surface_path, "File holding the surface equation")->required();
    flec->add_option("--census", census_path, "Census JSON")->required();
    flec->add_option("--field", field, "Override the field recorded in the census");
    flec->add_option("--seed", seed, "Seed for the auxiliary plane");
    flec->add_option("--jobs", jobs, "Worker threads (0 = all cores)");
    flec->add_option("-o,--out", out_path, "Write the census here instead of stdout");

    auto *audit = app.add_subcommand("audit", "Consistency audit of a measured census");
    audit->add_option("surface", surface_path, "File holding the surface equation")->required();
    audit->add_option("--census", census_path, "Census JSON with kinds and multiplicities")->required();
    audit->add_option("--field", field, "Override the field recorded in the census");
    audit->add_option("-o,--out", out_path, "Write the report here instead of stdout");

    auto *fermat = app.add_subcommand("fermat", "Write the 3d^2 lines of the Fermat surface as a lines file");
    fermat->add_option("d", degree, "Surface degree")->required();
    fermat->add_option("--field", field, "Field spec")->required();
    fermat->add_option("-o,--out", out_path, "Write the lines here instead of stdout");

    auto *probe = app.add_subcommand("probe", "Search for singular points over small extensions");
    probe->add_option("surface", surface_path, "File holding the surface equation")->required();
    probe->add_option("--field", field, "Finite field spec")->required();
    probe->add_option("--kmax", k_max, "Largest extension degree searched");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*bounds) {
            char *out = nullptr;
            check(lsf_bounds(degree, &out));
            write_output(take(out), out_path);
        } else if (*scan) {
            auto s = load_surface(surface_path, field);
            lsf_census *c = nullptr;
            check(lsf_scan(s.get(), jobs, &c));
            CensusPtr census(c);
            write_output(render(census.get()), out_path);
            if (!quiet)
                summarize(census.get());
        } else if (*verify) {
            auto s = load_surface(surface_path, field);
            const auto text = read_file(lines_path);
            lsf_census *c = nullptr;
            char *rejected = nullptr;
            check(lsf_verify_lines(s.get(), text.c_str(), &c, &rejected), lines_path);
            CensusPtr census(c);
            const std::string rej = take(rejected);
            write_output(render(census.get()), out_path);
            if (!quiet)
                summarize(census.get());
            if (rej.find("\"line\"") != std::string::npos) {
                std::cerr << "rejected candidates (not on the surface):\n" << rej;
                return kExitVerdict;
            }
        } else if (*classify) {
            auto [s, census] = load_census(surface_path, census_path, field);
            check(lsf_classify(census.get(), jobs));
            write_output(render(census.get()), out_path);
            if (!quiet)
                summarize(census.get());
        } else if (*flec) {
            auto [s, census] = load_census(surface_path, census_path, field);
            const auto status = lsf_flecnodal(census.get(), seed, jobs);
            if (status == LSF_ERR_INCONSISTENT)
                write_output(render(census.get()), out_path);
            check(status);
            write_output(render(census.get()), out_path);
            if (!quiet)
                summarize(census.get());
        } else if (*audit) {
            auto [s, census] = load_census(surface_path, census_path, field);
            char *report = nullptr;
            int all_hold = 0;
            check(lsf_audit(census.get(), &report, &all_hold));
            write_output(take(report), out_path);
            if (!all_hold) {
                std::cerr << "linesurf: audit: at least one verdict fails\n";
                return kExitVerdict;
            }
        } else if (*fermat) {
            char *out = nullptr;
            check(lsf_fermat_lines(field.c_str(), static_cast<int>(degree), &out));
            write_output(take(out), out_path);
        } else if (*probe) {
            auto s = load_surface(surface_path, field);
            char *out = nullptr;
            check(lsf_smoothness_probe(s.get(), k_max, &out));
            const std::string report = take(out);
            write_output(report, out_path);
            if (report.find("\"smooth\": false") != std::string::npos)
                return kExitVerdict;
        }
    } catch (const Exit &e) {
        return e.code;
    }
    return kExitOk;
}
