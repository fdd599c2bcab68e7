#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "packrigid/json_io.hpp"
#include "packrigid/moebius.hpp"
#include "packrigid/montecarlo.hpp"
#include "packrigid/planar_lift.hpp"
#include "packrigid/rigidity.hpp"
#include "packrigid/svg.hpp"

namespace {

using namespace packrigid;

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CLI::ValidationError("input", "cannot read file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content << "\n";
    else
        write_text_file(out_path, content + "\n");
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("PACKRIGID_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw CLI::ValidationError("PACKRIGID_SEED", "not an unsigned integer");
        }
    }
    return 0;
}

ToleranceProfile make_tol(double tol, double rank_tol) {
    ToleranceProfile t;
    t.contact_tol = tol;
    t.overlap_tol = tol;
    t.rank_tol = rank_tol;
    t.check();
    return t;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"packrigid: sphere packings with contact graphs of the form G (+) K2 -- "
                 "validation, Moebius standard form, penny lifts, chains, stress analysis"};
    app.require_subcommand(1);

    double tol = 1e-9, rank_tol = 1e-8;
    std::string in_path, out_path;
    int exit_code = 0;
    std::function<void()> action;

    auto add_tol = [&](CLI::App* cmd) {
        cmd->add_option("--tol", tol, "relative contact/overlap tolerance")
            ->capture_default_str();
        cmd->add_option("--rank-tol", rank_tol, "singular value ratio for rank cuts")
            ->capture_default_str();
    };

    // validate
    {
        auto* cmd = app.add_subcommand("validate", "classify sphere pairs of a packing");
        cmd->add_option("input", in_path, "Packing JSON file")->required();
        cmd->add_option("--out", out_path, "write the report here instead of stdout");
        add_tol(cmd);
        cmd->callback([&] {
            action = [&] {
                Packing pk = packing_from_json(read_text_file(in_path));
                ValidationReport report = validate(pk, make_tol(tol, rank_tol));
                emit(out_path, to_json(report));
                if (!report.valid) exit_code = 1;
            };
        });
    }

    // contacts
    {
        auto* cmd = app.add_subcommand("contacts", "extract the contact graph of a packing");
        cmd->add_option("input", in_path, "Packing JSON file")->required();
        cmd->add_option("--out", out_path, "output file");
        add_tol(cmd);
        cmd->callback([&] {
            action = [&] {
                Packing pk = packing_from_json(read_text_file(in_path));
                emit(out_path, to_json(contact_graph(pk, make_tol(tol, rank_tol))));
            };
        });
    }

    // stress
    {
        auto* cmd = app.add_subcommand("stress", "stress analysis of a packing's framework");
        cmd->add_option("input", in_path, "Packing JSON file")->required();
        cmd->add_option("--out", out_path, "output file");
        add_tol(cmd);
        cmd->callback([&] {
            action = [&] {
                Packing pk = packing_from_json(read_text_file(in_path));
                StressFreeVerdict verdict = is_stress_free(pk, make_tol(tol, rank_tol));
                emit(out_path,
                     json_object({{"stress_free", verdict.stress_free ? "true" : "false"},
                                  {"report", to_json(verdict.report)}}));
            };
        });
    }

    // standard-form
    {
        static std::string hub_a = "a", hub_b = "b", packing_out, pipeline_out;
        auto* cmd = app.add_subcommand("standard-form",
                                       "Moebius-normalize a G (+) K2 packing (unit hubs at "
                                       "(0,0,-1),(0,0,1), the rest on z = 0)");
        cmd->add_option("input", in_path, "Packing JSON file")->required();
        cmd->add_option("--hub-a", hub_a, "first hub label")->capture_default_str();
        cmd->add_option("--hub-b", hub_b, "second hub label")->capture_default_str();
        cmd->add_option("--out", out_path, "combined output file");
        cmd->add_option("--packing-out", packing_out, "write only the packing JSON here");
        cmd->add_option("--pipeline-out", pipeline_out, "write only the pipeline JSON here");
        add_tol(cmd);
        cmd->callback([&] {
            action = [&] {
                Packing pk = packing_from_json(read_text_file(in_path));
                StandardFormResult res =
                    standard_form(pk, hub_a, hub_b, make_tol(tol, rank_tol));
                if (!packing_out.empty()) write_text_file(packing_out, to_json(res.packing) + "\n");
                if (!pipeline_out.empty())
                    write_text_file(pipeline_out, to_json(res.pipeline) + "\n");
                if (packing_out.empty() || pipeline_out.empty() || !out_path.empty())
                    emit(out_path, json_object({{"packing", to_json(res.packing)},
                                                {"pipeline", to_json(res.pipeline)}}));
            };
        });
    }

    // lift
    {
        static std::string hub_a = "a", hub_b = "b";
        auto* cmd = app.add_subcommand("lift",
                                       "lift a penny realization to a sphere packing with "
                                       "contact graph G (+) K2");
        cmd->add_option("input", in_path, "PennyRealization JSON file")->required();
        cmd->add_option("--hub-a", hub_a, "bottom hub label")->capture_default_str();
        cmd->add_option("--hub-b", hub_b, "top hub label")->capture_default_str();
        cmd->add_option("--out", out_path, "output file");
        add_tol(cmd);
        cmd->callback([&] {
            action = [&] {
                PennyRealization r = penny_from_json(read_text_file(in_path));
                emit(out_path, to_json(lift_packing(r, hub_a, hub_b, make_tol(tol, rank_tol))));
            };
        });
    }

    // chain
    {
        static std::vector<double> radii;
        static std::vector<double> bracket{0.1, 10.0};
        static bool close = false;
        auto* cmd = app.add_subcommand("chain",
                                       "build a clockwise tangent-circle chain; with --close, "
                                       "solve for closing radii of the given prefix");
        cmd->add_option("--radii", radii, "chain radii (prefix radii with --close)")
            ->required()
            ->delimiter(',');
        cmd->add_flag("--close", close, "solve ||p_1 - p_k|| = r_1 + r_k for the last radius");
        cmd->add_option("--bracket", bracket, "search bracket for --close")
            ->delimiter(',')
            ->expected(2);
        cmd->add_option("--out", out_path, "output file");
        cmd->callback([&] {
            action = [&] {
                if (!close) {
                    emit(out_path, to_json(build_chain(radii)));
                    return;
                }
                std::vector<double> roots = close_chain_solve(radii, bracket[0], bracket[1]);
                std::vector<std::string> chains;
                for (double r : roots) {
                    std::vector<double> full = radii;
                    full.push_back(r);
                    chains.push_back(to_json(build_chain(full)));
                }
                std::vector<std::string> root_items;
                for (double r : roots) root_items.push_back(json_number(r));
                emit(out_path, json_object({{"prefix", [&] {
                                                 std::vector<std::string> xs;
                                                 for (double r : radii)
                                                     xs.push_back(json_number(r));
                                                 return json_array(xs);
                                             }()},
                                            {"roots", json_array(root_items)},
                                            {"chains", json_array(chains)}}));
            };
        });
    }

    // montecarlo
    {
        static ExperimentConfig cfg;
        static int k_min = 3, k_max = 6;
        auto* cmd = app.add_subcommand("montecarlo", "seeded experiments");
        cmd->require_subcommand(1);
        auto add_common = [&](CLI::App* sub) {
            sub->add_option("--seed", cfg.seed, "experiment seed (default PACKRIGID_SEED or 0)");
            sub->add_option("--trials", cfg.trials, "trial count")->capture_default_str();
            sub->add_option("--radii-min", cfg.radii_lo, "log-uniform radii lower bound")
                ->capture_default_str();
            sub->add_option("--radii-max", cfg.radii_hi, "log-uniform radii upper bound")
                ->capture_default_str();
            sub->add_option("--out", out_path, "output file");
            add_tol(sub);
        };
        static CLI::App* sf = cmd->add_subcommand(
            "stressfree", "random trees -> penny layout -> lift -> stress report");
        sf->add_option("--min-size", cfg.tree_size_min, "smallest tree")->capture_default_str();
        sf->add_option("--max-size", cfg.tree_size_max, "largest tree")->capture_default_str();
        add_common(sf);
        sf->callback([&] {
            action = [&] {
                cfg.tolerance = make_tol(tol, rank_tol);
                if (sf->count("--seed") == 0) cfg.seed = default_seed();
                StressExperimentReport report = montecarlo_stressfree(cfg);
                emit(out_path, to_json(report));
                bool all_free = report.stress_free_count == report.layouts_ok;
                if (!all_free || report.disagreements > 0) exit_code = 1;
            };
        });
        static CLI::App* ch = cmd->add_subcommand("chain", "random radii chains and closure defects");
        ch->add_option("--k-min", k_min, "shortest chain")->capture_default_str();
        ch->add_option("--k-max", k_max, "longest chain")->capture_default_str();
        add_common(ch);
        ch->callback([&] {
            action = [&] {
                cfg.tolerance = make_tol(tol, rank_tol);
                if (ch->count("--seed") == 0) cfg.seed = default_seed();
                emit(out_path, to_json(montecarlo_chain(cfg, k_min, k_max)));
            };
        });
    }

    // bounds
    {
        static long long n = 0;
        static int d = 3;
        auto* cmd = app.add_subcommand("bounds", "Maxwell and penny/contact counting bounds");
        cmd->add_option("--n", n, "vertex count")->required();
        cmd->add_option("--d", d, "dimension for the Maxwell bound")->capture_default_str();
        cmd->add_option("--out", out_path, "output file");
        cmd->callback([&] {
            action = [&] {
                std::vector<std::pair<std::string, std::string>> fields{
                    {"n", std::to_string(n)}, {"d", std::to_string(d)}};
                if (n >= d)
                    fields.emplace_back("maxwell_bound", std::to_string(maxwell_bound(d, n)));
                fields.emplace_back("penny_edge_bound", std::to_string(penny_edge_bound(n)));
                fields.emplace_back("sphere_contact_bound",
                                    std::to_string(sphere_contact_bound(n)));
                emit(out_path, json_object(fields));
            };
        });
    }

    // plot
    {
        auto* cmd = app.add_subcommand("plot", "render a penny realization, chain, or "
                                               "standard-form packing section as SVG");
        cmd->add_option("input", in_path, "PennyRealization, ChainResult or Packing JSON")
            ->required();
        cmd->add_option("--out", out_path, "output SVG file (stdout when omitted)");
        add_tol(cmd);
        cmd->callback([&] {
            action = [&] {
                std::string text = read_text_file(in_path);
                std::string svg;
                if (text.find("\"pennies\"") != std::string::npos)
                    svg = plot_penny_svg(penny_from_json(text), make_tol(tol, rank_tol));
                else if (text.find("\"spheres\"") != std::string::npos)
                    svg = plot_packing_svg(packing_from_json(text), make_tol(tol, rank_tol));
                else if (text.find("\"positions\"") != std::string::npos)
                    svg = plot_chain_svg(chain_from_json(text));
                else
                    throw CLI::ValidationError("input", "unrecognized JSON object for plotting");
                if (out_path.empty())
                    std::cout << svg;
                else
                    write_text_file(out_path, svg);
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        action();
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n" << to_json(e.report) << "\n";
        return 1;
    } catch (const SingularityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
