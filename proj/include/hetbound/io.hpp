#pragma once

#include <iosfwd>
#include <span>

#include <json.hpp>

#include "hetbound/bounds.hpp"
#include "hetbound/model.hpp"
#include "hetbound/physical.hpp"
#include "hetbound/stability.hpp"
#include "hetbound/trajectory.hpp"

namespace hetbound::io {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

Json to_json(const ModelSpec& spec);
Json to_json(const EquilibriumData& eq);
Json to_json(const StabilityReport& report);
Json to_json(const BoundReport& report);
Json to_json(const KappaConstants& constants);
Json to_json(const Trajectory& traj, bool include_samples = true);
Json to_json(const MassRadiusTable& table);

/// `analyze` document: model, equilibrium and stability with schema tag.
Json analysis_document(const SystemModel& model);

/// CSV with header kappa,z,w,alpha,D,E,X_closed,X_numeric.
void write_sweep_csv(std::span<const SweepRow> rows, std::ostream& out);

/// CSV with header r,m,rho,p,compactness.
void write_profile_csv(const PhysicalProfile& profile, std::ostream& out);

void write_markdown(const MassRadiusTable& table, std::ostream& out);

}  // namespace hetbound::io
