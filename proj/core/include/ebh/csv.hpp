#pragma once

#include "ebh/evidence.hpp"
#include "ebh/portfolio.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ebh {

// Evidence file: optional '#' comment lines, an optional "value" header, then
// one number per line ("inf" accepted for e-values). The kind is taken from
// the extension (.evals.csv / .pvals.csv) unless overridden.
EvidenceVector read_evidence_csv(const std::string& path,
                                 std::optional<EvidenceKind> kind = std::nullopt);

void write_evidence_csv(const std::string& path, const EvidenceVector& v);

// Price table: header "asset_id,rank,<period>...", one row per asset. Cells
// may be blank only as a trailing run, which marks the asset dead from the
// last observed month; a gap inside a live series is an error.
std::vector<PriceSeries> read_price_csv(const std::string& path);

}  // namespace ebh
