// nfvq: schedule VNF service chains through a QUBO model.
//
//   nfvq solve <instance.json> [--repeats N] [--reads R] [--sweeps S] ...
//   nfvq bench <cases.json> --out <dir>
//   nfvq oracle <instance.json>
//   nfvq export-qubo <instance.json> --out <file>
//   nfvq import-result <file> --instance <instance.json>
//
// Exit status: 0 success, 2 no feasible schedule, 1 bad input.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nfvq/bench.hpp"
#include "nfvq/error.hpp"
#include "nfvq/greedy.hpp"
#include "nfvq/qubo.hpp"
#include "nfvq/schedule_io.hpp"
#include "nfvq/solvers.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kInfeasible = 2;

std::string read_file(const std::string& path) {
   std::ifstream in(path, std::ios::binary);
   if (!in) throw nfvq::ParseError("cannot open '" + path + "'");
   std::stringstream ss;
   ss << in.rdbuf();
   return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
   const std::filesystem::path p(path);
   if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
   std::ofstream out(p, std::ios::binary);
   if (!out) throw nfvq::Error("cannot write '" + path + "'");
   out << text;
}

// Options shared by every command that builds a QUBO.
struct ModelOptions {
   std::optional<int> horizon;
   std::optional<double> penalty;
   bool printed_duration = false;

   void add(CLI::App* cmd) {
      cmd->add_option("--horizon", horizon,
                      "Slots T_max (default: greedy makespan + 1)");
      cmd->add_option("--penalty", penalty,
                      "Uniform penalty coefficient (default: 100 x objective bound)");
      cmd->add_flag("--printed-duration", printed_duration,
                    "Use the duration penalty without the x factor");
   }

   [[nodiscard]] nfvq::PenaltyConfig penalty_config() const {
      nfvq::PenaltyConfig c;
      c.base = penalty;
      c.printed_duration_form = printed_duration;
      return c;
   }

   [[nodiscard]] int resolve_horizon(const nfvq::Instance& instance) const {
      return horizon ? *horizon : nfvq::horizon(instance);
   }
};

void print_schedule(const nfvq::Instance& instance, const nfvq::Schedule& s) {
   std::cout << nfvq::render_gantt(instance, nfvq::gantt(instance, s));
   for (std::size_t i = 0; i < instance.chain_count(); ++i) {
      std::cout << "SC" << instance.chains()[i].id
                << " delay: " << nfvq::format_number(nfvq::chain_delay(instance, s, i))
                << " s\n";
   }
   std::cout << "total delay: " << nfvq::format_number(nfvq::total_delay(instance, s))
             << " s\n";
}

}  // namespace

int main(int argc, char** argv) {
   CLI::App app{"VNF service-chain scheduling via QUBO"};
   app.require_subcommand(1);

   // solve
   auto* solve = app.add_subcommand("solve", "Run the annealing pipeline on one instance");
   std::string solve_instance;
   std::size_t repeats = 50;
   nfvq::AnnealParams anneal;
   std::optional<double> beta_start;
   std::optional<double> beta_end;
   int retry_cap = 3;
   std::string solve_out;
   std::string schedule_out;
   bool timing = false;
   ModelOptions solve_model;
   solve->add_option("instance", solve_instance, "Instance JSON")->required();
   solve->add_option("--repeats", repeats, "Independent annealing runs")
        ->check(CLI::PositiveNumber);
   solve->add_option("--reads", anneal.reads, "Reads per run")->check(CLI::PositiveNumber);
   solve->add_option("--sweeps", anneal.sweeps, "Sweeps per read");
   solve->add_option("--seed", anneal.seed, "Base seed");
   solve->add_option("--threads", anneal.threads, "Worker threads per run (0 = all)");
   solve->add_option("--beta-start", beta_start, "Initial inverse temperature");
   solve->add_option("--beta-end", beta_end, "Final inverse temperature");
   solve->add_option("--retry-cap", retry_cap, "Horizon bumps when nothing is feasible")
        ->check(CLI::NonNegativeNumber);
   solve->add_option("--out", solve_out, "Directory for table and histogram CSVs");
   solve->add_option("--schedule-out", schedule_out, "Write the best schedule as JSON");
   solve->add_flag("--timing", timing, "Put wall-clock columns into table4.csv");
   solve_model.add(solve);

   // bench
   auto* bench = app.add_subcommand("bench", "Run every case of a case list");
   std::string cases_path;
   std::string bench_out;
   bool bench_timing = false;
   bench->add_option("cases", cases_path, "Case list JSON")->required();
   bench->add_option("--out", bench_out, "Output directory")->required();
   bench->add_flag("--timing", bench_timing, "Put wall-clock columns into table4.csv");

   // oracle
   auto* oracle = app.add_subcommand("oracle", "Exact optimum by branch and bound");
   std::string oracle_instance;
   std::optional<int> oracle_horizon;
   double max_space = nfvq::OracleOptions{}.max_search_space;
   std::string oracle_out;
   oracle->add_option("instance", oracle_instance, "Instance JSON")->required();
   oracle->add_option("--horizon", oracle_horizon, "Slots T_max (default: greedy)");
   oracle->add_option("--max-space", max_space, "Refuse larger search spaces");
   oracle->add_option("--schedule-out", oracle_out, "Write the optimal schedule as JSON");

   // export-qubo
   auto* exp = app.add_subcommand("export-qubo", "Write the QUBO for an external sampler");
   std::string export_instance;
   std::string export_out;
   std::string varmap_out;
   ModelOptions export_model;
   exp->add_option("instance", export_instance, "Instance JSON")->required();
   exp->add_option("--out", export_out, "QUBO file")->required();
   exp->add_option("--varmap", varmap_out, "Also write 'index name' per variable");
   export_model.add(exp);

   // import-result
   auto* imp = app.add_subcommand("import-result",
                                  "Decode an external sampler's bit vector");
   std::string result_path;
   std::string import_instance;
   std::string import_out;
   ModelOptions import_model;
   imp->add_option("result", result_path, "Result file (one line of 0/1)")->required();
   imp->add_option("--instance", import_instance,
                   "Instance JSON the QUBO was exported from")
        ->required();
   imp->add_option("--schedule-out", import_out, "Write the decoded schedule as JSON");
   import_model.add(imp);

   try {
      app.parse(argc, argv);
   } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
   } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e);
   } catch (const CLI::ParseError& e) {
      app.exit(e);
      return kInputError;
   }

   try {
      if (*solve) {
         nfvq::CaseConfig config;
         config.name = std::filesystem::path(solve_instance).stem().string();
         config.source = nfvq::load_instance_file(solve_instance);
         config.horizon = solve_model.horizon;
         config.repeats = repeats;
         config.anneal = anneal;
         config.anneal.beta_start = beta_start;
         config.anneal.beta_end = beta_end;
         config.penalty = solve_model.penalty_config();
         config.retry_cap = retry_cap;

         const nfvq::CaseResult result = nfvq::run_case(config);
         std::cout << nfvq::render_tables({result});
         if (!solve_out.empty()) nfvq::write_outputs(solve_out, {result}, timing);
         if (!result.successful()) {
            std::cerr << "no feasible schedule after " << result.attempts
                      << " horizon(s)\n"
                      << result.diagnostics;
            return kInfeasible;
         }
         const nfvq::Instance instance = nfvq::resolve_instance(config);
         std::cout << "\nbest schedule (T_max = " << result.horizon << ")\n";
         print_schedule(instance, *result.best_schedule);
         if (!schedule_out.empty()) {
            write_file(schedule_out, nfvq::save_schedule(*result.best_schedule));
         }
         return kOk;
      }

      if (*bench) {
         const auto cases = nfvq::load_cases_file(cases_path);
         std::vector<nfvq::CaseResult> results;
         bool all_ok = true;
         for (const auto& c : cases) {
            results.push_back(nfvq::run_case(c));
            const auto& r = results.back();
            std::cerr << r.name << ": " << (r.successful() ? "ok" : "no feasible run")
                      << " (success " << nfvq::format_number(r.success_rate) << ")\n";
            all_ok = all_ok && r.successful();
         }
         nfvq::write_outputs(bench_out, results, bench_timing);
         std::cout << nfvq::render_tables(results);
         return all_ok ? kOk : kInfeasible;
      }

      if (*oracle) {
         const nfvq::Instance instance = nfvq::load_instance_file(oracle_instance);
         const int h = oracle_horizon ? *oracle_horizon : nfvq::horizon(instance);
         const auto best = nfvq::exhaustive_schedule_oracle(instance, h, {max_space});
         if (!best) {
            std::cerr << "no schedule fits in " << h << " slots\n";
            return kInfeasible;
         }
         std::cout << "optimum (T_max = " << h << ", " << best->nodes
                   << " placements tried)\n";
         print_schedule(instance, best->schedule);
         if (!oracle_out.empty()) {
            write_file(oracle_out, nfvq::save_schedule(best->schedule));
         }
         return kOk;
      }

      if (*exp) {
         const nfvq::Instance instance = nfvq::load_instance_file(export_instance);
         const int h = export_model.resolve_horizon(instance);
         const nfvq::QuboModel model =
              nfvq::build_qubo(instance, h, export_model.penalty_config());
         write_file(export_out, nfvq::export_qubo(model.matrix));
         if (!varmap_out.empty()) {
            std::string text;
            for (std::size_t k = 0; k < model.size(); ++k) {
               text += std::to_string(k) + " " + model.variables.describe(k) + "\n";
            }
            write_file(varmap_out, text);
         }
         std::cout << "wrote " << model.size() << " variables, "
                   << model.matrix.quadratic().size() << " couplers (T_max = " << h
                   << ") to " << export_out << "\n";
         return kOk;
      }

      if (*imp) {
         const nfvq::Instance instance = nfvq::load_instance_file(import_instance);
         const int h = import_model.resolve_horizon(instance);
         const nfvq::QuboModel model =
              nfvq::build_qubo(instance, h, import_model.penalty_config());
         const nfvq::Bits bits = nfvq::import_result(model.size(), read_file(result_path));
         std::cout << "energy: " << nfvq::format_number(nfvq::energy(model.matrix, bits))
                   << "\n";
         const nfvq::Decoded decoded = nfvq::decode(model, bits);
         const auto report = nfvq::check_feasibility(instance, decoded.schedule);
         if (!report.feasible()) {
            std::cout << report.summary();
            return kInfeasible;
         }
         print_schedule(instance, decoded.schedule);
         if (!import_out.empty()) {
            write_file(import_out, nfvq::save_schedule(decoded.schedule));
         }
         return kOk;
      }
   } catch (const nfvq::Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kInputError;
   } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kInputError;
   }
   return kOk;
}
