#pragma once

#include <string>
#include <utility>

#include "impartial/axioms.hpp"
#include "impartial/blocking.hpp"
#include "impartial/decisive.hpp"
#include "impartial/impossibility.hpp"
#include "impartial/permutation.hpp"

namespace impartial {

/// {"n": 4, "rankings": [[1,2,3,0], ...]} with each inner array in
/// one-line notation. Parsing validates bijectivity; errors name the
/// offending field.
RankingProfile parse_profile_json(const std::string& text);
std::string profile_to_json(const RankingProfile& profile);

/// {"n":6,"rho":[1,2,3,4,5,0],"edges":{"0":[[2,3],[2,5],[3,4]],...}} with
/// colors as keys and pairs sorted ascending.
std::string multigraph_to_json(const RhoVector& rho, const ColoredMultigraph& graph);
std::pair<RhoVector, ColoredMultigraph> parse_multigraph_json(const std::string& text);

/// Per (i, b, j) a sorted position list, keyed sets[i][b][j].
std::string blocking_sets_to_json(const RhoVector& rho, const BlockingSets& sets);

/// {"n":5,"sets":{"0":[[0,1,2],[0,3,4],[1,3],[2,4]],...}}
std::string cutting_family_to_json(const CuttingFamily& family);
CuttingFamily parse_cutting_family_json(const std::string& text);

std::string axiom_report_to_json(const AxiomReport& report);
std::string chain_audit_to_json(const ChainAuditResult& result);

}  // namespace impartial
