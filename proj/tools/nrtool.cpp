// nrtool: numerical-range analysis from the command line.
//
// Subcommands:
//   analyze   flats + singularities + cross-check report for a matrix file
//   family    construct canonical two-flat nilpotent matrices
//   verify    run the built-in verification suites
//   boundary  boundary-only CSV/SVG export
//
// Exit codes: 0 success, 2 validation/parse error, 3 internal cross-check
// mismatch. NR_THREADS caps parallelism (0 = auto).

#include <cmath>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nr/angles.hpp"
#include "nr/boundary.hpp"
#include "nr/errors.hpp"
#include "nr/family.hpp"
#include "nr/flat_detect.hpp"
#include "nr/matrix_io.hpp"
#include "nr/verify.hpp"

namespace {

struct AnalyzeArgs {
    std::string path;
    std::string out_json, out_csv, out_svg;
    int n_phi = 2048;
    int grid_n = 64;
    double radius = -1.0;
};

struct FamilyArgs {
    double d = 0.0, theta = 0.0, x = 0.0, y = 0.0, t = 0.0;
    double k = 0.0;
    bool maximal = false;
    bool swap = false;
    bool degrees = false;
    std::string out_matrix, out_json, out_svg;
    int n_phi = 1024;
};

struct VerifyArgs {
    std::string suite = "all";
    int samples = 1000;
    std::uint64_t seed = 42;
};

struct BoundaryArgs {
    std::string path;
    std::string out_csv, out_svg;
    int n_phi = 2048;
    double phi0 = 0.0;
};

void print_flat(const nr::FlatPortion& f) {
    std::cout << "  [" << nr::to_string(f.source) << "] line " << f.line_u0 << "*x + " << f.line_v0
              << "*y + 1 = 0, distance " << f.distance << ", angle " << f.angle_of_line
              << ", length " << f.length << "\n    endpoints (" << f.endpoint1.x << ", "
              << f.endpoint1.y <<") .. (" << f.endpoint2.x << ", " << f.endpoint2.y << ")\n";
}

int run_analyze(const AnalyzeArgs& args) {
    const nr::ComplexMatrix a = nr::load_matrix_json(args.path);
    nr::AnalyzeOptions opt;
    opt.n_phi = args.n_phi;
    opt.grid_n = args.grid_n;
    opt.radius = args.radius;
    const nr::FlatReport rep = nr::analyze(a, opt);

    std::cout << "nilpotent: " << (rep.nilpotent ? "yes" : "no") << "\n"
              << "operator norm: " << rep.norm << "\n"
              << "singularities: " << rep.singularities.size() << "\n"
              << "flats (closed form): " << rep.flats.size() << "\n"
              << "flats (eigensweep): " << rep.sweep_flats.size() << "\n";
    for (const auto& f : rep.flats) print_flat(f);
    for (const auto& f : rep.sweep_flats) print_flat(f);
    if (rep.symmetry)
        std::cout << "symmetry line angle: " << rep.symmetry->angle
                  << " (reflected Hausdorff " << rep.symmetry->hausdorff << ")\n";
    std::cout << "cross-check matched: " << rep.cross_check.matched << "\n";
    for (const auto& d : rep.cross_check.discrepancies)
        std::cout << "cross-check issue: " << d << "\n";

    if (!args.out_json.empty()) nr::write_file_atomic(args.out_json, rep.to_json_string() + "\n");
    if (!args.out_csv.empty() || !args.out_svg.empty()) {
        const nr::BoundaryResult br = nr::sample_boundary(a, args.n_phi);
        if (!args.out_csv.empty()) nr::write_file_atomic(args.out_csv, nr::boundary_csv(br.samples));
        if (!args.out_svg.empty()) {
            nr::SvgOptions svg;
            svg.flats = rep.flats;
            for (const auto& f : rep.sweep_flats) svg.flats.push_back(f);
            if (rep.symmetry) svg.symmetry_angle = rep.symmetry->angle;
            nr::write_file_atomic(args.out_svg, nr::boundary_svg(br.polyline, svg));
        }
    }
    return rep.cross_check.ok() ? 0 : 3;
}

int run_family(const FamilyArgs& in, bool have_k, bool have_dtheta, bool have_xy) {
    FamilyArgs args = in;
    if (args.degrees) {
        args.theta *= nr::kPi / 180.0;
        args.t *= nr::kPi / 180.0;
    }

    const int modes = (have_k ? 1 : 0) + ((have_dtheta && args.maximal && !have_xy) ? 1 : 0) +
                      ((have_dtheta && have_xy && !args.maximal) ? 1 : 0);
    if (modes != 1)
        throw nr::DomainError(
            "specify exactly one of: --k, or --d/--theta/--x/--y, or --d/--theta --maximal");

    nr::FamilyParams p;
    if (have_k) {
        p.d = 1.0 / std::sqrt(2.0);
        p.theta = nr::theta_from_k(args.k);
        p.x = p.y = 1.0;
        p.swap_deltas = !args.swap; // A_k carries the deltas in swapped order
    } else {
        p.d = args.d;
        p.theta = args.theta;
        if (args.maximal) {
            p.x = p.y = nr::maximal_xy(args.d, args.theta);
            p.x = std::nextafter(p.x, 0.0); // keep x strictly inside (0, 2d)
            p.y = std::min(p.y, nr::ymax(p.d, p.theta, p.x));
        } else {
            p.x = args.x;
            p.y = args.y;
        }
        p.swap_deltas = args.swap;
    }
    p.t = args.t;

    const nr::ComplexMatrix a = nr::build_family_matrix(p);
    const nr::FamilyPrediction pred = nr::predicted_flats(p);

    std::cout.precision(12);
    std::cout << "family parameters: d=" << p.d << " theta=" << p.theta << " x=" << p.x
              << " y=" << p.y << " t=" << p.t << " swap=" << (p.swap_deltas ? "yes" : "no")
              << "\n";
    std::cout << "deltas: " << pred.delta1 << ", " << pred.delta2 << "\n";
    std::cout << "matrix:\n";
    for (int i = 0; i < 4; ++i) {
        std::cout << "  ";
        for (int j = 0; j < 4; ++j) {
            const nr::Complex z = a(i, j);
            std::cout << "(" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i)"
                      << (j == 3 ? "\n" : " ");
        }
    }
    std::cout << "predicted flat length L = " << pred.length << "\n"
              << "predicted line distance = " << p.d << ", mutual angle = " << pred.mutual_angle
              << "\n"
              << "lines intersect at (" << pred.line_intersection.x << ", "
              << pred.line_intersection.y << ")\n"
              << "symmetry line angle = " << pred.symmetry_angle << "\n";
    for (const auto& f : pred.flats) print_flat(f);

    if (!args.out_matrix.empty()) nr::write_file_atomic(args.out_matrix, nr::matrix_to_json(a) + "\n");
    if (!args.out_json.empty()) {
        std::ostringstream os;
        os.precision(17);
        os << "{\"d\":" << p.d << ",\"theta\":" << p.theta << ",\"x\":" << p.x << ",\"y\":" << p.y
           << ",\"t\":" << p.t << ",\"swap_deltas\":" << (p.swap_deltas ? "true" : "false")
           << ",\"length\":" << pred.length << ",\"delta1\":" << pred.delta1
           << ",\"delta2\":" << pred.delta2 << "}\n";
        nr::write_file_atomic(args.out_json, os.str());
    }
    if (!args.out_svg.empty()) {
        const nr::BoundaryResult br = nr::sample_boundary(a, args.n_phi);
        nr::SvgOptions svg;
        svg.flats.assign(pred.flats.begin(), pred.flats.end());
        svg.symmetry_angle = pred.symmetry_angle;
        nr::write_file_atomic(args.out_svg, nr::boundary_svg(br.polyline, svg));
    }
    return 0;
}

int run_verify(const VerifyArgs& args) {
    std::vector<int> ids;
    if (args.suite == "paper") ids = nr::paper_suite();
    else if (args.suite == "random") ids = nr::random_suite();
    else if (args.suite == "all") ids = nr::all_suite();
    else throw nr::DomainError("unknown suite '" + args.suite + "' (expected paper|random|all)");

    nr::VerifyOptions opt;
    opt.samples = args.samples;
    opt.seed = args.seed;

    bool all_pass = true;
    std::cout << "id\tstatus\tname\tseconds\tdetail\n";
    for (int id : ids) {
        const nr::CriterionResult r = nr::run_criterion(id, opt);
        all_pass = all_pass && r.pass;
        std::cout << r.id << "\t" << (r.pass ? "PASS" : "FAIL") << "\t" << r.name << "\t"
                  << r.seconds << "\t" << r.detail << "\n";
    }
    return all_pass ? 0 : 1;
}

int run_boundary(const BoundaryArgs& args) {
    const nr::ComplexMatrix a = nr::load_matrix_json(args.path);
    const nr::BoundaryResult br = nr::sample_boundary(a, args.n_phi, args.phi0);
    std::cout << "samples: " << br.samples.size() << "\n";
    if (!args.out_csv.empty()) nr::write_file_atomic(args.out_csv, nr::boundary_csv(br.samples));
    if (!args.out_svg.empty()) {
        nr::SvgOptions svg;
        svg.flats = nr::extract_flats_geometric(br.polyline, br.samples, 1e-4, 1e-6,
                                                nr::operator_norm(a));
        nr::write_file_atomic(args.out_svg, nr::boundary_svg(br.polyline, svg));
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical range analysis toolkit"};
    app.require_subcommand(1);

    AnalyzeArgs an;
    CLI::App* analyze = app.add_subcommand("analyze", "analyze a matrix file");
    analyze->add_option("path", an.path, "matrix JSON file")->required();
    analyze->add_option("--out-json", an.out_json, "write the full report");
    analyze->add_option("--out-csv", an.out_csv, "write the boundary polyline CSV");
    analyze->add_option("--out-svg", an.out_svg, "write a boundary plot");
    analyze->add_option("--n-phi", an.n_phi, "sweep directions")->default_val(2048);
    analyze->add_option("--radius", an.radius, "singularity search radius (default auto)");
    analyze->add_option("--grid-n", an.grid_n, "singularity seed grid size")->default_val(64);

    FamilyArgs fa;
    CLI::App* family = app.add_subcommand("family", "construct a two-flat nilpotent matrix");
    auto* od = family->add_option("--d", fa.d, "line distance to origin");
    auto* oth = family->add_option("--theta", fa.theta, "angle between the flat lines");
    auto* ox = family->add_option("--x", fa.x, "parameter x in (0, 2d)");
    auto* oy = family->add_option("--y", fa.y, "parameter y in (0, ymax]");
    family->add_option("--t", fa.t, "global rotation");
    auto* ok = family->add_option("--k", fa.k, "one-parameter family A_k");
    family->add_flag("--maximal", fa.maximal, "choose x = y for maximal flat length");
    family->add_flag("--swap", fa.swap, "swap the delta roots");
    family->add_flag("--degrees", fa.degrees, "angles given in degrees");
    family->add_option("--out-matrix", fa.out_matrix, "write the matrix file");
    family->add_option("--out-json", fa.out_json, "write parameters + predicted flats");
    family->add_option("--out-svg", fa.out_svg, "write a boundary plot");
    family->add_option("--n-phi", fa.n_phi, "plot sampling density")->default_val(1024);

    VerifyArgs ve;
    CLI::App* verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("--suite", ve.suite, "paper | random | all")->default_val("all");
    verify->add_option("--samples", ve.samples, "flat-count property sample size")
        ->default_val(1000);
    verify->add_option("--seed", ve.seed, "random seed")->default_val(42);

    BoundaryArgs bo;
    CLI::App* boundary = app.add_subcommand("boundary", "boundary-only export");
    boundary->add_option("path", bo.path, "matrix JSON file")->required();
    boundary->add_option("--n-phi", bo.n_phi, "sample count")->default_val(2048);
    boundary->add_option("--phi0", bo.phi0, "sampling grid start angle")->default_val(0.0);
    boundary->add_option("--out-csv", bo.out_csv, "write the polyline CSV");
    boundary->add_option("--out-svg", bo.out_svg, "write a boundary plot");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(analyze)) return run_analyze(an);
        if (app.got_subcommand(family))
            return run_family(fa, ok->count() > 0, od->count() > 0 && oth->count() > 0,
                              ox->count() > 0 && oy->count() > 0);
        if (app.got_subcommand(verify)) return run_verify(ve);
        if (app.got_subcommand(boundary)) return run_boundary(bo);
    } catch (const nr::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nr::NotNilpotentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
