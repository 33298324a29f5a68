#pragma once

#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include "gravent/budget.hpp"
#include "gravent/feasibility/delocalization.hpp"
#include "gravent/feasibility/validation.hpp"
#include "gravent/io/csv.hpp"

namespace gravent::io {

// Human-readable tables. Numbers use 3-digit engineering notation; the JSON
// writers carry full precision.

namespace detail {
inline std::string margin_text(double m) { return std::isinf(m) ? "inf" : engineering(m); }
}  // namespace detail

inline void print_budget(std::ostream& os, const RateBudget& b) {
  os << "Gamma_ent     " << engineering(b.gamma_ent) << " s^-1\n\n";
  os << std::left << std::setw(16) << "channel" << std::setw(14) << "rate [s^-1]" << "margin\n";
  for (const auto& c : b.channels) {
    os << std::setw(16) << channel_name(c.id) << std::setw(14) << engineering(c.rate) << detail::margin_text(c.margin);
    if (c.id == b.binding_channel) os << "  <- binding";
    os << '\n';
  }
  if (b.comparison == ComparisonMode::Aggregate)
    os << "\ntotal rate    " << engineering(b.total_rate) << " s^-1, aggregate margin "
       << detail::margin_text(b.aggregate_margin) << '\n';
  os << "\nfeasible: " << (b.feasible ? "yes" : "no") << '\n';
  for (const auto& w : b.warnings) os << "warning: " << w << '\n';
  os << std::right;
}

inline void print_bound(std::ostream& os, const BoundResult& r) {
  const std::string unit(unknown_unit(r.unknown));
  os << unknown_name(r.unknown) << (r.direction == BoundDirection::LowerBound ? " > " : " < ")
     << engineering(r.threshold) << (unit.empty() ? "" : " " + unit) << "  (binding: " << channel_name(r.channel)
     << ", " << r.iterations << " bisection steps)\n";
}

inline void print_delocalization(std::ostream& os, const DelocalizationReport& r) {
  os << std::left << std::setw(16) << "channel" << "delta_x condition\n";
  for (const auto& e : r.entries) {
    os << std::setw(16) << channel_name(e.channel);
    switch (e.kind) {
      case DelocalizationEntry::Kind::LowerBound: os << "> " << engineering(e.bound) << " m"; break;
      case DelocalizationEntry::Kind::UpperBound: os << "< " << engineering(e.bound) << " m"; break;
      case DelocalizationEntry::Kind::AlwaysFeasible: os << "satisfied for any delta_x"; break;
      case DelocalizationEntry::Kind::NeverFeasible: os << "violated for any delta_x"; break;
    }
    os << '\n';
  }
  os << std::right << "\ndelta_x_min   " << engineering(r.delta_x_min) << " m";
  if (r.binding) os << " (" << channel_name(*r.binding) << ")";
  os << '\n';
  if (!r.feasible) {
    os << "infeasible, blocked by:";
    for (auto id : r.blocking) os << ' ' << channel_name(id);
    os << '\n';
  }
}

inline void print_validation(std::ostream& os, const std::vector<ValidationRow>& rows) {
  std::size_t w = 8;
  for (const auto& r : rows) w = std::max(w, r.case_id.size() + 2);
  os << std::left << std::setw(static_cast<int>(w)) << "case" << std::setw(12) << "quoted" << std::setw(12)
     << "computed" << std::setw(10) << "ratio" << std::setw(6) << "tol" << "result\n";
  for (const auto& r : rows) {
    os << std::setw(static_cast<int>(w)) << r.case_id << std::setw(12) << engineering(r.paper_value) << std::setw(12)
       << engineering(r.computed_value) << std::setw(10) << engineering(r.ratio) << std::setw(6)
       << engineering(r.tolerance_factor) << (r.pass ? "pass" : "FAIL") << '\n';
  }
  const auto passed = std::count_if(rows.begin(), rows.end(), [](const ValidationRow& r) { return r.pass; });
  os << std::right << '\n' << passed << '/' << rows.size() << " rows pass\n";
}

inline void write_validation_csv(std::ostream& os, const std::vector<ValidationRow>& rows) {
  os << "case_id,quantity,unit,paper_value,computed_value,ratio,tolerance_factor,pass,assumptions\r\n";
  for (const auto& r : rows)
    os << csv_field(r.case_id) << ',' << csv_field(r.quantity) << ',' << csv_field(r.unit) << ','
       << format_double(r.paper_value) << ',' << format_double(r.computed_value) << ',' << format_double(r.ratio)
       << ',' << format_double(r.tolerance_factor) << ',' << (r.pass ? "true" : "false") << ','
       << csv_field(r.assumptions) << "\r\n";
}

}  // namespace gravent::io
