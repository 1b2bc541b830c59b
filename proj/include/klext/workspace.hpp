#pragma once

// Bundles a Coxeter system with its KL and R tables and the lazily built
// interval partition, so that the higher-level modules share one cache.

#include "klext/coxeter.hpp"
#include "klext/hecke.hpp"
#include "klext/intervals.hpp"
#include "klext/rpoly.hpp"

#include <memory>
#include <mutex>

namespace klext {

class Workspace {
public:
  explicit Workspace(SystemPtr sys) : sys_(std::move(sys)), kl_(sys_), r_(sys_) {}
  explicit Workspace(std::string_view label, const BuildOptions& opts = {})
      : Workspace(CoxeterSystem::build(label, opts)) {}

  const CoxeterSystem& sys() const { return *sys_; }
  const SystemPtr& sys_ptr() const { return sys_; }
  const KLTable& kl() const { return kl_; }
  KLTable& kl() { return kl_; }
  const RTable& r() const { return r_; }
  RTable& r() { return r_; }

  const EquivPartition& partition() const {
    std::call_once(part_once_, [this] { part_ = std::make_unique<EquivPartition>(sys_); });
    return *part_;
  }

  Element parse(std::string_view text) const { return sys_->parse(text); }

private:
  SystemPtr sys_;
  KLTable kl_;
  RTable r_;
  mutable std::once_flag part_once_;
  mutable std::unique_ptr<EquivPartition> part_;
};

} // namespace klext
