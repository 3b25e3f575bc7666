#ifndef NFVQ_INSTANCE_HPP_
#define NFVQ_INSTANCE_HPP_

// Problem instances: VMs with capability sets and compute rates, service
// chains of typed function steps, and the slot grid they are scheduled on.
//
// Inside the library chains, steps and VMs are addressed by 0-based
// positions. The 1-based ids only appear in files and in rendered output.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nfvq {

struct VmSpec {
   int id = 0;                     ///< 1-based
   std::vector<int> capabilities;  ///< sorted, unique function kinds
   double rate = 0.0;              ///< MB per second

   [[nodiscard]] bool serves(int kind) const;
   friend bool operator==(const VmSpec&, const VmSpec&) = default;
};

struct FunctionStep {
   int kind = 0;           ///< function kind, 1-based
   double workload = 0.0;  ///< MB

   friend bool operator==(const FunctionStep&, const FunctionStep&) = default;
};

struct ServiceChain {
   int id = 0;  ///< 1-based
   std::vector<FunctionStep> steps;

   friend bool operator==(const ServiceChain&, const ServiceChain&) = default;
};

/// Immutable once constructed; the constructor validates every invariant.
class Instance {
 public:
   Instance() = default;
   Instance(std::vector<VmSpec> vms, std::vector<ServiceChain> chains,
            double slot_length, std::optional<int> horizon_override = {});

   [[nodiscard]] const std::vector<VmSpec>& vms() const { return vms_; }
   [[nodiscard]] const std::vector<ServiceChain>& chains() const {
      return chains_;
   }
   [[nodiscard]] double slot_length() const { return slot_length_; }
   [[nodiscard]] std::optional<int> horizon_override() const {
      return horizon_override_;
   }

   [[nodiscard]] std::size_t vm_count() const { return vms_.size(); }
   [[nodiscard]] std::size_t chain_count() const { return chains_.size(); }
   [[nodiscard]] std::size_t step_count(std::size_t chain) const;
   [[nodiscard]] std::size_t total_steps() const;
   /// Largest function kind referenced by any VM or step.
   [[nodiscard]] int kind_count() const;

   [[nodiscard]] const FunctionStep& step(std::size_t chain,
                                          std::size_t step) const;

   /// VMs able to run step (chain, step), ascending. Never empty.
   [[nodiscard]] std::vector<std::size_t> capable_set(std::size_t chain,
                                                      std::size_t step) const;

   /// Slots needed to run (chain, step) on vm: ceil(W / (C * dT)).
   /// Throws CapabilityError if vm does not serve the step's kind.
   [[nodiscard]] int processing_slots(std::size_t chain, std::size_t step,
                                      std::size_t vm) const;

   /// Fastest capable VM for the step, lowest position on ties.
   [[nodiscard]] std::size_t fastest_vm(std::size_t chain,
                                        std::size_t step) const;
   [[nodiscard]] int min_processing_slots(std::size_t chain,
                                          std::size_t step) const;

   [[nodiscard]] Instance with_horizon_override(std::optional<int> h) const;

   friend bool operator==(const Instance&, const Instance&) = default;

 private:
   void check_index(std::size_t chain, std::size_t step) const;

   std::vector<VmSpec> vms_;
   std::vector<ServiceChain> chains_;
   double slot_length_ = 1.0;
   std::optional<int> horizon_override_;
};

/// Slot count for a workload processed at rate with slot length dt.
/// Quotients within 1e-9 (relative) of an integer snap to it so that
/// decimal inputs such as 1.1 MB at 0.1 MB/s do not round up spuriously.
[[nodiscard]] int slots_for(double workload, double rate, double dt);

[[nodiscard]] Instance load_instance(std::string_view json_text);
[[nodiscard]] std::string save_instance(const Instance& instance);
[[nodiscard]] Instance load_instance_file(const std::string& path);

/// Three VMs, three chains, five function kinds, dT = 1 s.
[[nodiscard]] Instance fig1_fixture();

}  // namespace nfvq

#endif  // NFVQ_INSTANCE_HPP_
