// Command-line front end: construct, verify, classify, coverings, search
// and atlas subcommands over the JSON interchange format.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "isoeq/json_io.hpp"

namespace {

using isoeq::jsonio::json;

json read_input(const std::string& in_path) {
    std::string text;
    if (in_path.empty() || in_path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream f(in_path);
        if (!f) isoeq::raise(isoeq::Errc::Malformed, "cannot open input file " + in_path);
        std::ostringstream ss;
        ss << f.rdbuf();
        text = ss.str();
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& err) {
        isoeq::raise(isoeq::Errc::Malformed, std::string("invalid JSON: ") + err.what());
    }
}

void write_output(const json& j, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream f(out_path);
        if (!f) isoeq::raise(isoeq::Errc::Malformed, "cannot open output file " + out_path);
        f << j.dump(2) << "\n";
    }
}

std::vector<isoeq::Vec> parse_vector_list(const std::string& text, const isoeq::Ambient& amb,
                                          const std::string& what) {
    // Vectors separated by ';', coordinates by ','.
    std::vector<isoeq::Vec> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ';')) {
        isoeq::Vec v;
        std::stringstream ps(part);
        std::string coord;
        while (std::getline(ps, coord, ',')) {
            try {
                const long long x = std::stoll(coord);
                isoeq::require(x >= 0 && x < amb.field.q(), isoeq::Errc::Malformed,
                               what + ": coordinate " + coord + " out of range for q = " +
                                   std::to_string(amb.field.q()));
                v.push_back(static_cast<isoeq::Elem>(x));
            } catch (const std::invalid_argument&) {
                isoeq::raise(isoeq::Errc::Malformed, what + ": bad coordinate \"" + coord + "\"");
            } catch (const std::out_of_range&) {
                isoeq::raise(isoeq::Errc::Malformed, what + ": bad coordinate \"" + coord + "\"");
            }
        }
        isoeq::require(static_cast<int>(v.size()) == amb.dim, isoeq::Errc::Malformed,
                       what + ": expected " + std::to_string(amb.dim) + " coordinates per vector");
        out.push_back(std::move(v));
    }
    return out;
}

struct ConstructArgs {
    std::string type;
    int p = 2;
    int e = 1;
    int dim = 2;
    int s_dim = 0;
    std::string vectors;
    std::string s_basis;
    std::string out;
};

json construct_instance(const ConstructArgs& a) {
    const int vec_count = a.type == "a" ? 2 : (a.type == "b" ? 3 : 4);
    isoeq::Field f = isoeq::Field::make(a.p, a.e);
    const isoeq::Ambient amb = isoeq::make_ambient(f, a.dim);
    isoeq::require(a.s_dim >= 0, isoeq::Errc::Precondition, "core dimension must be nonnegative");

    // Default witness: a, b, (c, d) are the first standard basis vectors and
    // the core is spanned by the following s_dim ones.
    std::vector<isoeq::Vec> vecs;
    if (a.vectors.empty()) {
        isoeq::require(a.dim >= vec_count + a.s_dim, isoeq::Errc::AmbientTooSmall,
                       "ambient dimension " + std::to_string(a.dim) + " below required " +
                           std::to_string(vec_count + a.s_dim));
        for (int i = 0; i < vec_count; ++i) {
            isoeq::Vec v(static_cast<std::size_t>(a.dim), 0);
            v[static_cast<std::size_t>(i)] = 1;
            vecs.push_back(std::move(v));
        }
    } else {
        vecs = parse_vector_list(a.vectors, amb, "--vectors");
        isoeq::require(static_cast<int>(vecs.size()) == vec_count, isoeq::Errc::Malformed,
                       "--vectors: type " + a.type + " needs exactly " + std::to_string(vec_count) +
                           " vectors");
    }

    isoeq::Subspace core = isoeq::Subspace::zero(amb);
    if (!a.s_basis.empty()) {
        core = isoeq::Subspace::span(amb, parse_vector_list(a.s_basis, amb, "--s-basis"));
        isoeq::require(core.dim() == a.s_dim || a.s_dim == 0, isoeq::Errc::Malformed,
                       "--s-basis: spans dimension " + std::to_string(core.dim()) +
                           ", conflicting with --s-dim");
    } else if (a.s_dim > 0) {
        std::vector<isoeq::Vec> gens;
        for (int i = 0; i < a.s_dim; ++i) {
            isoeq::Vec v(static_cast<std::size_t>(a.dim), 0);
            v[static_cast<std::size_t>(vec_count + i)] = 1;
            gens.push_back(std::move(v));
        }
        core = isoeq::Subspace::span(amb, gens);
    }

    isoeq::SolutionPair pair = [&] {
        if (a.type == "a") return isoeq::build_type_a({core, vecs[0], vecs[1]});
        if (a.type == "b") return isoeq::build_type_b({core, vecs[0], vecs[1], vecs[2]});
        return isoeq::build_type_c({core, vecs[0], vecs[1], vecs[2], vecs[3]});
    }();

    json out = isoeq::jsonio::to_json(pair);
    out["type"] = a.type;
    json params{{"s_dim", core.dim()}, {"S", isoeq::jsonio::to_json(core)}};
    const char* names[] = {"a", "b", "c", "d"};
    for (int i = 0; i < vec_count; ++i) {
        json coords = json::array();
        for (isoeq::Elem x : vecs[static_cast<std::size_t>(i)]) coords.push_back(static_cast<int>(x));
        params[names[i]] = std::move(coords);
    }
    out["params"] = std::move(params);
    return out;
}

int run_atlas(const std::string& out_dir, const std::vector<int>& qs, const std::vector<int>& s_dims) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    json index = json::array();
    for (int qv : qs) {
        int p = 0;
        int e = 1;
        switch (qv) {
            case 2: p = 2; break;
            case 3: p = 3; break;
            case 4: p = 2, e = 2; break;
            case 5: p = 5; break;
            default:
                isoeq::raise(isoeq::Errc::Precondition,
                             "atlas grid supports q in {2, 3, 4, 5}, got " + std::to_string(qv));
        }
        for (int s : s_dims) {
            for (const std::string type : {"a", "b", "c"}) {
                const int vec_count = type == "a" ? 2 : (type == "b" ? 3 : 4);
                ConstructArgs args;
                args.type = type;
                args.p = p;
                args.e = e;
                args.dim = vec_count + s;
                args.s_dim = s;
                json entry = construct_instance(args);

                // Entries are verified before they are written.
                isoeq::SolutionPair pair = isoeq::jsonio::pair_from_json(entry);
                isoeq::require(isoeq::verify_equation(pair), isoeq::Errc::StructureViolation,
                               "atlas entry failed re-verification");
                const isoeq::Classification cls = isoeq::classify(pair);
                entry["classification"] = isoeq::jsonio::to_json(cls);
                entry["digest"] = isoeq::jsonio::pair_digest(pair);

                const std::string name = "q" + std::to_string(qv) + "_s" + std::to_string(s) +
                                         "_type" + type + ".json";
                write_output(entry, (fs::path(out_dir) / name).string());
                index.push_back(json{{"file", name},
                                     {"q", qv},
                                     {"s_dim", s},
                                     {"type", type},
                                     {"kind", kind_name(cls.kind)},
                                     {"digest", entry["digest"]}});
            }
        }
    }
    write_output(json{{"entries", std::move(index)}}, (fs::path(out_dir) / "index.json").string());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Isometry-equation toolkit: construct, verify, classify and search solutions "
                 "over finite fields"};
    app.require_subcommand(1);

    ConstructArgs cargs;
    CLI::App* construct = app.add_subcommand("construct", "Build a canonical nontrivial solution");
    construct->add_option("--type", cargs.type, "Family: a, b or c")
        ->required()
        ->check(CLI::IsMember({"a", "b", "c"}));
    construct->add_option("--p", cargs.p, "Field characteristic")->required();
    construct->add_option("--e", cargs.e, "Field extension degree");
    construct->add_option("--dim", cargs.dim, "Ambient dimension")->required();
    construct->add_option("--s-dim", cargs.s_dim, "Dimension of the common core S");
    construct->add_option("--vectors", cargs.vectors,
                          "Witness vectors, ';'-separated, coordinates ','-separated");
    construct->add_option("--s-basis", cargs.s_basis, "Generators of S, same syntax");
    construct->add_option("--out", cargs.out, "Output file (default stdout)");

    std::string in_path;
    std::string out_path;
    std::uint64_t max_points = isoeq::kDefaultMaxPoints;

    CLI::App* verify = app.add_subcommand("verify", "Check a pair JSON against the equation");
    verify->add_option("--in", in_path, "Input file (default stdin)");
    verify->add_option("--out", out_path, "Output file (default stdout)");
    verify->add_option("--max-points", max_points, "Evaluation point cap");

    CLI::App* classify_cmd = app.add_subcommand("classify", "Classify a solution pair JSON");
    classify_cmd->add_option("--in", in_path, "Input file (default stdin)");
    classify_cmd->add_option("--out", out_path, "Output file (default stdout)");
    classify_cmd->add_option("--max-points", max_points, "Evaluation point cap");

    int cov_p = 2;
    int cov_e = 1;
    int cov_dim = 2;
    int cov_m = 3;
    CLI::App* coverings = app.add_subcommand(
        "coverings", "Enumerate coverings of K^dim by m proper subspaces, with certificates");
    coverings->add_option("--p", cov_p, "Field characteristic")->required();
    coverings->add_option("--e", cov_e, "Field extension degree");
    coverings->add_option("--dim", cov_dim, "Dimension of the covered space")->required();
    coverings->add_option("--m", cov_m, "Number of covering members")->required();
    coverings->add_option("--out", out_path, "Output file (default stdout)");

    int s_p = 2;
    int s_e = 1;
    int s_dim = 2;
    int s_m = 2;
    int jobs = 1;
    bool no_prune = false;
    std::uint64_t max_subspaces = isoeq::kDefaultMaxSubspaces;
    CLI::App* search = app.add_subcommand("search", "Exhaustive nontrivial-solution search");
    search->add_option("--p", s_p, "Field characteristic")->required();
    search->add_option("--e", s_e, "Field extension degree");
    search->add_option("--dim", s_dim, "Ambient dimension")->required();
    search->add_option("--m", s_m, "Tuple length")->required();
    search->add_flag("--no-prune", no_prune, "Disable all pruning (audit mode)");
    search->add_option("--jobs", jobs, "Worker threads");
    search->add_option("--max-points", max_points, "Evaluation point cap");
    search->add_option("--max-subspaces", max_subspaces, "Subspace enumeration cap");
    search->add_option("--out", out_path, "Output file (default stdout)");

    std::string atlas_dir;
    std::vector<int> atlas_qs{2, 3, 4, 5};
    std::vector<int> atlas_sdims{0, 1};
    CLI::App* atlas = app.add_subcommand("atlas", "Write the catalog of constructed instances");
    atlas->add_option("--out-dir", atlas_dir, "Output directory")->required();
    atlas->add_option("--qs", atlas_qs, "Field sizes, default 2 3 4 5");
    atlas->add_option("--s-dims", atlas_sdims, "Core dimensions, default 0 1");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int rc = app.exit(err);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (construct->parsed()) {
            write_output(construct_instance(cargs), cargs.out);
            return 0;
        }
        if (verify->parsed()) {
            const isoeq::SolutionPair pair = isoeq::jsonio::pair_from_json(read_input(in_path));
            isoeq::VerifyOptions opts;
            opts.max_points = max_points;
            const json rep = isoeq::jsonio::verification_report(pair, opts);
            write_output(rep, out_path);
            return rep["solution"].get<bool>() ? 0 : 1;
        }
        if (classify_cmd->parsed()) {
            const isoeq::SolutionPair pair = isoeq::jsonio::pair_from_json(read_input(in_path));
            isoeq::VerifyOptions opts;
            opts.max_points = max_points;
            const isoeq::Classification cls = isoeq::classify(pair, opts);
            json out = isoeq::jsonio::to_json(cls);
            out["diagnostics"] = isoeq::jsonio::to_json(isoeq::dimension_profile(pair));
            out["diagnostics"]["meet_dim"] = isoeq::common_meet(pair).dim();
            write_output(out, out_path);
            return 0;
        }
        if (coverings->parsed()) {
            const isoeq::Field f = isoeq::Field::make(cov_p, cov_e);
            const isoeq::Ambient amb = isoeq::make_ambient(f, cov_dim);
            const isoeq::Subspace whole = isoeq::Subspace::full(amb);
            const auto covers = isoeq::enumerate_coverings(whole, cov_m);
            json out{{"field", isoeq::jsonio::to_json(f)},
                     {"dim", cov_dim},
                     {"m", cov_m},
                     {"coverings", json::array()}};
            for (const auto& cover : covers) {
                json members = json::array();
                for (const isoeq::Subspace& w : cover) members.push_back(isoeq::jsonio::to_json(w));
                json entry{{"members", std::move(members)}};
                if (static_cast<int>(cover.size()) == f.q() + 1) {
                    const isoeq::CoveringCertificate cert =
                        isoeq::verify_covering_structure(whole, cover);
                    entry["certificate"] = json{{"core", isoeq::jsonio::to_json(cert.core)},
                                                {"members", cert.members},
                                                {"points_checked", cert.points_checked}};
                }
                out["coverings"].push_back(std::move(entry));
            }
            out["count"] = covers.size();
            write_output(out, out_path);
            return 0;
        }
        if (search->parsed()) {
            isoeq::SearchConfig cfg{isoeq::Field::make(s_p, s_e), s_dim, s_m, isoeq::Pruning{},
                                    isoeq::SearchCaps{max_points, max_subspaces}, jobs};
            if (no_prune) cfg.pruning = isoeq::Pruning::none();
            const isoeq::SearchReport rep = isoeq::search_nontrivial(cfg);
            write_output(isoeq::jsonio::search_report_to_json(rep, cfg), out_path);
            return 0;
        }
        if (atlas->parsed()) {
            return run_atlas(atlas_dir, atlas_qs, atlas_sdims);
        }
    } catch (const isoeq::Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return isoeq::errc_exit_code(err.code());
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 5;
    }
    return 2;
}
