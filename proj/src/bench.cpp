#include "nfvq/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "json.hpp"
#include "nfvq/error.hpp"
#include "nfvq/greedy.hpp"

namespace nfvq {

using json = nlohmann::json;

std::string format_number(double v) {
   char buf[64];
   const auto res = std::to_chars(buf, buf + sizeof buf, v);
   return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// Generator

Instance generate_case(const GeneratorParams& params, std::uint64_t seed) {
   if (params.chains < 0 || params.steps < 1 || params.vms < 1 ||
       params.kinds < 1 || params.rates.empty() ||
       !(params.workload_min > 0.0) ||
       params.workload_max < params.workload_min || params.density < 0.0) {
      throw ValidationError("invalid generator parameters");
   }
   std::seed_seq seq{static_cast<std::uint32_t>(seed),
                     static_cast<std::uint32_t>(seed >> 32), 0x6e667671U};
   std::mt19937_64 rng(seq);
   auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
   auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

   for (int attempt = 0; attempt < params.max_retries; ++attempt) {
      std::vector<VmSpec> vms;
      bool empty_vm = false;
      for (int m = 1; m <= params.vms; ++m) {
         VmSpec vm{m, {}, params.rates[pick(params.rates.size())]};
         for (int k = 1; k <= params.kinds; ++k) {
            if (uniform() < params.density) vm.capabilities.push_back(k);
         }
         empty_vm = empty_vm || vm.capabilities.empty();
         vms.push_back(std::move(vm));
      }
      std::vector<ServiceChain> chains;
      for (int i = 1; i <= params.chains; ++i) {
         ServiceChain c{i, {}};
         for (int j = 0; j < params.steps; ++j) {
            const int kind = 1 + static_cast<int>(pick(
                                      static_cast<std::size_t>(params.kinds)));
            double w = params.workload_min +
                       uniform() * (params.workload_max - params.workload_min);
            w = std::max(0.1, std::round(w * 10.0) / 10.0);
            c.steps.push_back({kind, w});
         }
         chains.push_back(std::move(c));
      }
      if (empty_vm) continue;
      const bool servable = std::all_of(
           chains.begin(), chains.end(), [&](const ServiceChain& c) {
              return std::all_of(c.steps.begin(), c.steps.end(),
                                 [&](const FunctionStep& s) {
                                    return std::any_of(
                                         vms.begin(), vms.end(),
                                         [&](const VmSpec& vm) {
                                            return vm.serves(s.kind);
                                         });
                                 });
           });
      if (!servable) continue;
      return Instance(std::move(vms), std::move(chains), params.slot_length);
   }
   throw ValidationError("could not generate a servable instance in " +
                         std::to_string(params.max_retries) + " attempts");
}

Instance resolve_instance(const CaseConfig& config) {
   Instance base = std::holds_alternative<Instance>(config.source)
                        ? std::get<Instance>(config.source)
                        : generate_case(std::get<GeneratorParams>(config.source),
                                        config.generator_seed);
   const double dt = config.slot_length.value_or(base.slot_length());
   const std::optional<int> h =
        config.horizon ? config.horizon : base.horizon_override();
   return Instance(base.vms(), base.chains(), dt, h);
}

// ---------------------------------------------------------------------------
// Running a case

std::uint64_t run_seed(std::uint64_t base, std::size_t repeat) {
   // splitmix64 finalizer over (base, repeat)
   std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (repeat + 1);
   z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
   z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
   return z ^ (z >> 31);
}

CaseResult run_case(const CaseConfig& config) {
   if (config.repeats < 1) throw ValidationError("repeats must be at least 1");
   if (config.retry_cap < 0) throw ValidationError("retry cap must be >= 0");

   const Instance instance = resolve_instance(config);
   CaseResult result;
   result.name = config.name;
   result.chains = instance.chain_count();
   result.vms = instance.vm_count();
   result.min_steps = instance.chain_count() ? SIZE_MAX : 0;
   for (const auto& c : instance.chains()) {
      result.min_steps = std::min(result.min_steps, c.steps.size());
      result.max_steps = std::max(result.max_steps, c.steps.size());
   }

   const GreedyResult greedy = greedy_schedule(instance);
   result.greedy_makespan = greedy.makespan_slots;
   result.greedy_seconds = greedy.makespan_slots * instance.slot_length();

   std::ostringstream diag;
   for (int bump = 0; bump <= config.retry_cap; ++bump) {
      const int h = horizon(instance, bump);
      result.horizon = h;
      result.attempts = bump + 1;
      result.runs.clear();
      result.q_size = 0;
      result.avg_sampler_seconds = 0.0;
      if (h < 2) {
         diag << "horizon " << h << ": too short for any schedule\n";
         continue;
      }
      const QuboModel model = build_qubo(instance, h, config.penalty);
      result.q_size = model.size();

      double seconds = 0.0;
      std::optional<std::size_t> best_run;
      for (std::size_t r = 0; r < config.repeats; ++r) {
         AnnealParams params = config.anneal;
         params.seed = run_seed(config.anneal.seed, r);
         const SampleSet samples = simulated_annealing(model.matrix, params);
         seconds += samples.seconds;

         RunRecord rec;
         rec.seed = params.seed;
         rec.seconds = samples.seconds;
         if (auto found = best_feasible(model, samples)) {
            rec.feasible = true;
            rec.objective = found->total_delay;
            rec.longest_delay = longest_delay(instance, found->schedule);
            rec.avg_vm_busy = avg_vm_busy_time(instance, found->schedule);
            if (!best_run || rec.objective < result.runs[*best_run].objective) {
               best_run = r;
               result.best_schedule = std::move(found->schedule);
            }
         }
         result.runs.push_back(rec);
      }
      result.avg_sampler_seconds = seconds / static_cast<double>(config.repeats);
      const auto feasible = static_cast<double>(
           std::count_if(result.runs.begin(), result.runs.end(),
                         [](const RunRecord& r) { return r.feasible; }));
      result.success_rate = feasible / static_cast<double>(config.repeats);

      if (best_run) {
         const RunRecord& b = result.runs[*best_run];
         result.best_objective = b.objective;
         result.longest_delay = b.longest_delay;
         result.avg_vm_busy = b.avg_vm_busy;
         break;
      }
      result.best_schedule.reset();
      diag << "horizon " << h << ": no feasible sample in " << config.repeats
           << " runs (Q " << model.size() << "x" << model.size() << ")\n";
   }
   result.diagnostics = diag.str();
   return result;
}

// ---------------------------------------------------------------------------
// Tables

namespace {

std::string parameters(const CaseResult& r) {
   std::string j = std::to_string(r.max_steps);
   if (r.min_steps != r.max_steps) {
      j = std::to_string(r.min_steps) + ".." + j;
   }
   return "I=" + std::to_string(r.chains) + " J=" + j +
          " M=" + std::to_string(r.vms);
}

std::string optional_number(const std::optional<double>& v) {
   return v ? format_number(*v) : "NA";
}

std::string q_size(const CaseResult& r) {
   return std::to_string(r.q_size) + "x" + std::to_string(r.q_size);
}

std::string percent(double rate) {
   char buf[32];
   std::snprintf(buf, sizeof buf, "%.0f%%", rate * 100.0);
   return buf;
}

std::string pad(const std::string& s, std::size_t w) {
   return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
}

std::string aligned(const std::vector<std::vector<std::string>>& rows) {
   std::vector<std::size_t> width;
   for (const auto& row : rows) {
      width.resize(std::max(width.size(), row.size()), 0);
      for (std::size_t c = 0; c < row.size(); ++c) {
         width[c] = std::max(width[c], row[c].size());
      }
   }
   std::string out;
   for (const auto& row : rows) {
      std::string line;
      for (std::size_t c = 0; c < row.size(); ++c) {
         line += pad(row[c], width[c] + 2);
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      out += line + "\n";
   }
   return out;
}

}  // namespace

std::string table3_csv(const std::vector<CaseResult>& results) {
   std::string out =
        "case,parameters,greedy_s,objective_s,longest_delay_s,"
        "avg_vm_processing_s,q_size\n";
   for (const auto& r : results) {
      out += r.name + "," + parameters(r) + "," + format_number(r.greedy_seconds) +
             "," + optional_number(r.best_objective) + "," +
             optional_number(r.longest_delay) + "," +
             optional_number(r.avg_vm_busy) + "," + q_size(r) + "\n";
   }
   return out;
}

std::string table4_csv(const std::vector<CaseResult>& results,
                       bool with_timing) {
   std::string out =
        "case,avg_qpu_access_time_s,avg_solver_run_time_s,success_rate\n";
   for (const auto& r : results) {
      out += r.name + ",NA," +
             (with_timing ? format_number(r.avg_sampler_seconds) : "NA") + "," +
             format_number(r.success_rate) + "\n";
   }
   return out;
}

std::string render_tables(const std::vector<CaseResult>& results) {
   std::vector<std::vector<std::string>> t3 = {
        {"Case", "Parameters", "Greedy (s)", "Objective (s)",
         "Longest delay (s)", "Avg VM processing (s)", "Q size", "T_max"}};
   std::vector<std::vector<std::string>> t4 = {
        {"Case", "Avg QPU access (s)", "Avg solver run time (s)",
         "Success rate"}};
   for (const auto& r : results) {
      t3.push_back({r.name, parameters(r), format_number(r.greedy_seconds),
                    optional_number(r.best_objective),
                    optional_number(r.longest_delay),
                    optional_number(r.avg_vm_busy),
                    "(" + std::to_string(r.q_size) + ", " +
                         std::to_string(r.q_size) + ")",
                    std::to_string(r.horizon)});
      char secs[32];
      std::snprintf(secs, sizeof secs, "%.3f", r.avg_sampler_seconds);
      t4.push_back({r.name, "n/a", secs, percent(r.success_rate)});
   }
   return "Simulation results\n" + aligned(t3) + "\nTime consuming and success rate\n" +
          aligned(t4);
}

// ---------------------------------------------------------------------------
// Histograms

Histograms histograms(const CaseResult& result) {
   std::map<double, std::size_t> longest;
   std::map<double, std::size_t> total;
   Histograms h;
   for (const auto& r : result.runs) {
      if (!r.feasible) {
         ++h.infeasible;
         continue;
      }
      ++longest[r.longest_delay];
      ++total[r.objective];
   }
   const double n = result.runs.empty() ? 1.0 : static_cast<double>(result.runs.size());
   for (const auto& [v, c] : longest) {
      h.longest.push_back({v, c, static_cast<double>(c) / n});
   }
   for (const auto& [v, c] : total) {
      h.total.push_back({v, c, static_cast<double>(c) / n});
   }
   return h;
}

std::string histogram_csv(const std::vector<HistogramBin>& bins) {
   std::string out = "delay_s,count,probability\n";
   for (const auto& b : bins) {
      out += format_number(b.value) + "," + std::to_string(b.count) + "," +
             format_number(b.probability) + "\n";
   }
   return out;
}

namespace {

std::string file_stem(const std::string& name) {
   std::string s;
   for (char c : name) {
      const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' ||
                      c == '_' || c == '.';
      s += ok ? c : '_';
   }
   return s.empty() ? "case" : s;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
   std::ofstream out(path, std::ios::binary);
   if (!out) throw Error("cannot write '" + path.string() + "'");
   out << text;
}

}  // namespace

void write_outputs(const std::string& dir,
                   const std::vector<CaseResult>& results, bool with_timing) {
   const std::filesystem::path root(dir);
   std::filesystem::create_directories(root);
   write_file(root / "table3.csv", table3_csv(results));
   write_file(root / "table4.csv", table4_csv(results, with_timing));
   for (const auto& r : results) {
      const Histograms h = histograms(r);
      const std::string stem = file_stem(r.name);
      write_file(root / ("hist_longest_" + stem + ".csv"), histogram_csv(h.longest));
      write_file(root / ("hist_total_" + stem + ".csv"), histogram_csv(h.total));
   }
}

// ---------------------------------------------------------------------------
// Case files

namespace {

void apply_settings(const json& j, CaseConfig& c) {
   auto get = [&](const char* key, auto& dst) {
      if (!j.contains(key) || j[key].is_null()) return;
      try {
         dst = j[key].get<std::remove_reference_t<decltype(dst)>>();
      } catch (const json::exception& e) {
         throw ParseError(std::string("cases: bad value for '") + key +
                          "': " + e.what());
      }
   };
   get("repeats", c.repeats);
   get("reads", c.anneal.reads);
   get("sweeps", c.anneal.sweeps);
   get("seed", c.anneal.seed);
   get("threads", c.anneal.threads);
   get("retry_cap", c.retry_cap);
   if (j.contains("beta_start") && !j["beta_start"].is_null()) {
      c.anneal.beta_start = j["beta_start"].get<double>();
   }
   if (j.contains("beta_end") && !j["beta_end"].is_null()) {
      c.anneal.beta_end = j["beta_end"].get<double>();
   }
   if (j.contains("penalty") && !j["penalty"].is_null()) {
      c.penalty.base = j["penalty"].get<double>();
   }
   if (j.contains("printed_duration_form")) {
      c.penalty.printed_duration_form = j["printed_duration_form"].get<bool>();
   }
   if (j.contains("slot_length_s") && !j["slot_length_s"].is_null()) {
      c.slot_length = j["slot_length_s"].get<double>();
   }
   if (j.contains("horizon") && !j["horizon"].is_null()) {
      c.horizon = j["horizon"].get<int>();
   }
}

GeneratorParams parse_generator(const json& g, std::uint64_t& seed) {
   GeneratorParams p;
   try {
      if (g.contains("chains")) p.chains = g["chains"].get<int>();
      if (g.contains("steps")) p.steps = g["steps"].get<int>();
      if (g.contains("vms")) p.vms = g["vms"].get<int>();
      if (g.contains("kinds")) p.kinds = g["kinds"].get<int>();
      if (g.contains("workload_mb")) {
         const auto range = g["workload_mb"].get<std::vector<double>>();
         if (range.size() != 2) throw ParseError("workload_mb needs [min, max]");
         p.workload_min = range[0];
         p.workload_max = range[1];
      }
      if (g.contains("rates")) p.rates = g["rates"].get<std::vector<double>>();
      if (g.contains("density")) p.density = g["density"].get<double>();
      if (g.contains("slot_length_s")) p.slot_length = g["slot_length_s"].get<double>();
      if (g.contains("seed")) seed = g["seed"].get<std::uint64_t>();
   } catch (const json::exception& e) {
      throw ParseError(std::string("cases: bad generator block: ") + e.what());
   }
   return p;
}

}  // namespace

std::vector<CaseConfig> load_cases(std::string_view json_text,
                                   const std::string& base_dir) {
   json doc;
   try {
      doc = json::parse(json_text);
   } catch (const json::parse_error& e) {
      throw ParseError(std::string("cases file is not valid JSON: ") + e.what());
   }
   if (!doc.is_object() || !doc.contains("cases") || !doc["cases"].is_array()) {
      throw ParseError("cases file needs a 'cases' array");
   }
   CaseConfig defaults;
   if (doc.contains("defaults")) apply_settings(doc["defaults"], defaults);

   std::vector<CaseConfig> out;
   for (const json& c : doc["cases"]) {
      CaseConfig cfg = defaults;
      if (!c.contains("name") || !c["name"].is_string()) {
         throw ParseError("every case needs a string 'name'");
      }
      cfg.name = c["name"].get<std::string>();
      if (c.contains("instance")) {
         std::filesystem::path p(c["instance"].get<std::string>());
         if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
         cfg.source = load_instance_file(p.string());
      } else if (c.contains("generator")) {
         cfg.source = parse_generator(c["generator"], cfg.generator_seed);
      } else {
         throw ParseError("case '" + cfg.name +
                          "' needs an 'instance' path or a 'generator' block");
      }
      apply_settings(c, cfg);
      out.push_back(std::move(cfg));
   }
   return out;
}

std::vector<CaseConfig> load_cases_file(const std::string& path) {
   std::ifstream in(path);
   if (!in) throw ParseError("cannot open cases file '" + path + "'");
   std::stringstream ss;
   ss << in.rdbuf();
   return load_cases(ss.str(),
                     std::filesystem::path(path).parent_path().string());
}

}  // namespace nfvq
