#include "nfvq/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "nfvq/error.hpp"

namespace nfvq {

using json = nlohmann::json;

bool VmSpec::serves(int kind) const {
   return std::binary_search(capabilities.begin(), capabilities.end(), kind);
}

int slots_for(double workload, double rate, double dt) {
   const double q = workload / rate / dt;
   const double r = std::round(q);
   if (std::abs(q - r) <= 1e-9 * std::max(1.0, r)) {
      return std::max(1, static_cast<int>(r));
   }
   return std::max(1, static_cast<int>(std::ceil(q)));
}

Instance::Instance(std::vector<VmSpec> vms, std::vector<ServiceChain> chains,
                   double slot_length, std::optional<int> horizon_override)
    : vms_(std::move(vms)),
      chains_(std::move(chains)),
      slot_length_(slot_length),
      horizon_override_(horizon_override) {
   if (!(slot_length_ > 0.0) || !std::isfinite(slot_length_)) {
      throw ValidationError("slot length must be positive");
   }
   if (horizon_override_ && *horizon_override_ < 1) {
      throw ValidationError("horizon override must be at least 1");
   }
   if (vms_.empty()) {
      throw ValidationError("instance has no VMs");
   }

   std::sort(vms_.begin(), vms_.end(),
             [](const VmSpec& a, const VmSpec& b) { return a.id < b.id; });
   for (std::size_t m = 0; m < vms_.size(); ++m) {
      VmSpec& vm = vms_[m];
      if (vm.id != static_cast<int>(m) + 1) {
         throw ValidationError("VM ids must be unique and contiguous from 1");
      }
      if (!(vm.rate > 0.0) || !std::isfinite(vm.rate)) {
         throw ValidationError("VM " + std::to_string(vm.id) +
                               " has nonpositive rate");
      }
      std::sort(vm.capabilities.begin(), vm.capabilities.end());
      vm.capabilities.erase(
           std::unique(vm.capabilities.begin(), vm.capabilities.end()),
           vm.capabilities.end());
      if (vm.capabilities.empty()) {
         throw ValidationError("VM " + std::to_string(vm.id) +
                               " has an empty capability set");
      }
      if (vm.capabilities.front() < 1) {
         throw ValidationError("function kinds are 1-based");
      }
   }

   std::sort(chains_.begin(), chains_.end(),
             [](const ServiceChain& a, const ServiceChain& b) {
                return a.id < b.id;
             });
   for (std::size_t i = 0; i < chains_.size(); ++i) {
      const ServiceChain& chain = chains_[i];
      if (chain.id != static_cast<int>(i) + 1) {
         throw ValidationError(
              "chain ids must be unique and contiguous from 1");
      }
      if (chain.steps.empty()) {
         throw ValidationError("chain " + std::to_string(chain.id) +
                               " has no steps");
      }
      for (std::size_t j = 0; j < chain.steps.size(); ++j) {
         const FunctionStep& s = chain.steps[j];
         const std::string where = "chain " + std::to_string(chain.id) +
                                   " step " + std::to_string(j + 1);
         if (s.kind < 1) {
            throw ValidationError(where + ": function kinds are 1-based");
         }
         if (!(s.workload > 0.0) || !std::isfinite(s.workload)) {
            throw ValidationError(where + ": nonpositive workload");
         }
         const bool servable =
              std::any_of(vms_.begin(), vms_.end(),
                          [&](const VmSpec& vm) { return vm.serves(s.kind); });
         if (!servable) {
            throw ValidationError(where + ": no VM serves function kind " +
                                  std::to_string(s.kind));
         }
      }
   }
}

std::size_t Instance::step_count(std::size_t chain) const {
   if (chain >= chains_.size()) {
      throw IndexError("chain index " + std::to_string(chain) +
                       " out of range");
   }
   return chains_[chain].steps.size();
}

std::size_t Instance::total_steps() const {
   std::size_t n = 0;
   for (const auto& c : chains_) n += c.steps.size();
   return n;
}

int Instance::kind_count() const {
   int k = 0;
   for (const auto& vm : vms_) {
      if (!vm.capabilities.empty()) k = std::max(k, vm.capabilities.back());
   }
   for (const auto& c : chains_) {
      for (const auto& s : c.steps) k = std::max(k, s.kind);
   }
   return k;
}

void Instance::check_index(std::size_t chain, std::size_t step) const {
   if (chain >= chains_.size() || step >= chains_[chain].steps.size()) {
      throw IndexError("step (" + std::to_string(chain + 1) + ", " +
                       std::to_string(step + 1) + ") out of range");
   }
}

const FunctionStep& Instance::step(std::size_t chain, std::size_t step) const {
   check_index(chain, step);
   return chains_[chain].steps[step];
}

std::vector<std::size_t> Instance::capable_set(std::size_t chain,
                                               std::size_t step) const {
   const int kind = this->step(chain, step).kind;
   std::vector<std::size_t> out;
   for (std::size_t m = 0; m < vms_.size(); ++m) {
      if (vms_[m].serves(kind)) out.push_back(m);
   }
   return out;
}

int Instance::processing_slots(std::size_t chain, std::size_t step,
                               std::size_t vm) const {
   const FunctionStep& s = this->step(chain, step);
   if (vm >= vms_.size()) {
      throw IndexError("VM index " + std::to_string(vm) + " out of range");
   }
   if (!vms_[vm].serves(s.kind)) {
      throw CapabilityError("VM " + std::to_string(vm + 1) +
                            " cannot serve function kind " +
                            std::to_string(s.kind));
   }
   return slots_for(s.workload, vms_[vm].rate, slot_length_);
}

std::size_t Instance::fastest_vm(std::size_t chain, std::size_t step) const {
   std::size_t best = 0;
   int best_slots = 0;
   for (std::size_t m : capable_set(chain, step)) {
      const int t = processing_slots(chain, step, m);
      if (best_slots == 0 || t < best_slots) {
         best = m;
         best_slots = t;
      }
   }
   return best;
}

int Instance::min_processing_slots(std::size_t chain, std::size_t step) const {
   return processing_slots(chain, step, fastest_vm(chain, step));
}

Instance Instance::with_horizon_override(std::optional<int> h) const {
   return Instance(vms_, chains_, slot_length_, h);
}

// ---------------------------------------------------------------------------
// JSON

namespace {

template <typename T>
T require(const json& obj, const char* key, const std::string& where) {
   if (!obj.is_object() || !obj.contains(key)) {
      throw ParseError(where + ": missing key '" + key + "'");
   }
   try {
      return obj.at(key).get<T>();
   } catch (const json::exception& e) {
      throw ParseError(where + ": bad value for '" + key + "': " + e.what());
   }
}

}  // namespace

Instance load_instance(std::string_view json_text) {
   json doc;
   try {
      doc = json::parse(json_text);
   } catch (const json::parse_error& e) {
      throw ParseError(std::string("instance is not valid JSON: ") + e.what());
   }
   if (!doc.is_object()) throw ParseError("instance must be a JSON object");

   const auto slot = require<double>(doc, "slot_length_s", "instance");
   std::optional<int> horizon;
   if (doc.contains("horizon_override") && !doc["horizon_override"].is_null()) {
      horizon = require<int>(doc, "horizon_override", "instance");
   }

   const json& vms_json = doc.contains("vms") ? doc["vms"] : json();
   if (!vms_json.is_array()) throw ParseError("instance: 'vms' must be an array");
   std::vector<VmSpec> vms;
   for (const json& v : vms_json) {
      VmSpec vm;
      vm.id = require<int>(v, "id", "vm");
      vm.rate = require<double>(v, "rate_mb_per_s", "vm");
      vm.capabilities = require<std::vector<int>>(v, "capabilities", "vm");
      vms.push_back(std::move(vm));
   }

   const json& chains_json = doc.contains("chains") ? doc["chains"] : json();
   if (!chains_json.is_array()) {
      throw ParseError("instance: 'chains' must be an array");
   }
   std::vector<ServiceChain> chains;
   for (const json& c : chains_json) {
      ServiceChain chain;
      chain.id = require<int>(c, "id", "chain");
      if (!c.contains("steps") || !c["steps"].is_array()) {
         throw ParseError("chain: 'steps' must be an array");
      }
      for (const json& s : c["steps"]) {
         chain.steps.push_back({require<int>(s, "kind", "step"),
                                require<double>(s, "workload_mb", "step")});
      }
      chains.push_back(std::move(chain));
   }

   std::set<int> seen;
   for (const auto& vm : vms) {
      if (!seen.insert(vm.id).second) {
         throw ValidationError("duplicate VM id " + std::to_string(vm.id));
      }
   }
   seen.clear();
   for (const auto& c : chains) {
      if (!seen.insert(c.id).second) {
         throw ValidationError("duplicate chain id " + std::to_string(c.id));
      }
   }
   return Instance(std::move(vms), std::move(chains), slot, horizon);
}

std::string save_instance(const Instance& instance) {
   json doc;
   doc["slot_length_s"] = instance.slot_length();
   if (instance.horizon_override()) {
      doc["horizon_override"] = *instance.horizon_override();
   }
   json vms = json::array();
   for (const auto& vm : instance.vms()) {
      vms.push_back({{"id", vm.id},
                     {"rate_mb_per_s", vm.rate},
                     {"capabilities", vm.capabilities}});
   }
   doc["vms"] = std::move(vms);
   json chains = json::array();
   for (const auto& c : instance.chains()) {
      json steps = json::array();
      for (const auto& s : c.steps) {
         steps.push_back({{"kind", s.kind}, {"workload_mb", s.workload}});
      }
      chains.push_back({{"id", c.id}, {"steps", std::move(steps)}});
   }
   doc["chains"] = std::move(chains);
   return doc.dump(2) + "\n";
}

Instance load_instance_file(const std::string& path) {
   std::ifstream in(path);
   if (!in) throw ParseError("cannot open instance file '" + path + "'");
   std::stringstream ss;
   ss << in.rdbuf();
   return load_instance(ss.str());
}

Instance fig1_fixture() {
   std::vector<VmSpec> vms = {
        {1, {1, 2, 3}, 1.5},
        {2, {1, 3, 5}, 1.0},
        {3, {2, 4, 5}, 1.0},
   };
   auto chain = [](int id, std::vector<int> kinds, double mb) {
      ServiceChain c{id, {}};
      for (int k : kinds) c.steps.push_back({k, mb});
      return c;
   };
   std::vector<ServiceChain> chains = {
        chain(1, {1, 3, 4}, 4.0),
        chain(2, {3, 4, 2}, 0.8),
        chain(3, {2, 5, 3}, 2.0),
   };
   return Instance(std::move(vms), std::move(chains), 1.0);
}

}  // namespace nfvq
