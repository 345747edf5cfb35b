#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gammax/ntheory.hpp"

namespace gammax {

/// One CSV row of the prime scan.
struct ScanRecord {
    u64 p = 0;
    u64 kappa = 0;
    u64 eta = 0;
    double gamma_max = 0.0;
    double kappa2_over_eta = 0.0;
    double eta_over_gamma_max = 0.0;
    double kappa_over_sqrt_p = 0.0;
    double stmt1_margin = 0.0; // gamma_max * (ln p)^s / p
};

struct ScanConfig {
    u64 p_min = 3;
    u64 p_max = 3;
    unsigned s = 1; // margin exponent
    std::string out_path;
    std::string checkpoint_path; // empty: no checkpointing
    unsigned workers = 1;
    bool restart = false; // discard any existing checkpoint and CSV
};

/// Empirical constants fitted over a record set. s_hat is -1 when no
/// integer s <= 64 satisfies the margin condition on some row.
struct FitResult {
    double c1_hat = 0.0; // max kappa^2/eta, plus one ulp
    double c2_hat = 0.0; // smallest constant with c1_hat*eta < c2_hat*gamma_max row-wise
    int s_hat = 1;
};

/// Streaming accumulator behind both the scan summary and fit_constants,
/// so the two report identical numbers for the same rows.
struct ScanSummary {
    u64 count = 0;
    double max_kappa2_over_eta = 0.0;
    double max_eta_over_gamma_max = 0.0;
    double max_kappa_over_sqrt_p = 0.0;
    double min_stmt1_margin = 0.0;
    int s_needed_max = 0; // over rows past the 10th prime; 65 marks "not satisfiable"

    void absorb(const ScanRecord& rec);
    FitResult fit() const;
};

struct ScanResult {
    std::vector<ScanRecord> records; // full row set, including resumed-over rows
    ScanSummary summary;
    bool completed = true; // false when a progress hook stopped the scan early
};

/// Computes one scan row from scratch.
ScanRecord make_scan_record(u64 p, unsigned s);

/// Called after each row lands in the CSV; return false to stop the scan
/// in place (files are left exactly as an interruption would leave them).
using ScanProgress = std::function<bool(const ScanRecord&)>;

/// Scans every prime in [p_min, p_max]: rows stream to the CSV in p order
/// as workers finish them, and the checkpoint (when configured) is replaced
/// atomically after every batch. An existing checkpoint resumes the scan;
/// a mismatched or unreadable one throws CheckpointCorrupt unless
/// config.restart is set.
ScanResult scan(const ScanConfig& config, const ScanProgress& progress = {});

/// Fits the empirical constants over the records. Throws EmptyInput when
/// records is empty.
FitResult fit_constants(std::span<const ScanRecord> records);

std::string csv_header();
std::string csv_row(const ScanRecord& rec);
std::vector<ScanRecord> read_csv(const std::string& path);

/// printf("%.12g") — the 12-significant-digit form used for every real in
/// the CSV.
std::string format_real(double v);

} // namespace gammax
