#include "gammax/scan.hpp"

#include <atomic>
#include <cfloat>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "gammax/cyclotomic.hpp"

namespace gammax {

namespace {

constexpr int kStmt1SearchLimit = 64;
constexpr int kStmt1Unsatisfied = kStmt1SearchLimit + 1;
constexpr u64 kEmpiricalP0Rows = 10; // rows past the 10th prime feed the s fit
constexpr u64 kCheckpointBatch = 32;

u64 config_hash(const ScanConfig& config) {
    // FNV-1a over the fields that determine the output rows
    std::string key = "from=" + std::to_string(config.p_min) + ";to=" + std::to_string(config.p_max) +
                      ";s=" + std::to_string(config.s);
    u64 h = 1469598103934665603ull;
    for (unsigned char c : key) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

int stmt1_needed_s(const ScanRecord& rec) {
    const double lp = std::log(static_cast<double>(rec.p));
    double power = 1.0;
    for (int s = 1; s <= kStmt1SearchLimit; ++s) {
        power *= lp;
        if (rec.gamma_max * power > static_cast<double>(rec.p)) return s;
    }
    return kStmt1Unsatisfied;
}

} // namespace

void ScanSummary::absorb(const ScanRecord& rec) {
    if (count == 0) {
        min_stmt1_margin = rec.stmt1_margin;
    } else {
        min_stmt1_margin = std::min(min_stmt1_margin, rec.stmt1_margin);
    }
    max_kappa2_over_eta = std::max(max_kappa2_over_eta, rec.kappa2_over_eta);
    max_eta_over_gamma_max = std::max(max_eta_over_gamma_max, rec.eta_over_gamma_max);
    max_kappa_over_sqrt_p = std::max(max_kappa_over_sqrt_p, rec.kappa_over_sqrt_p);
    if (count >= kEmpiricalP0Rows) s_needed_max = std::max(s_needed_max, stmt1_needed_s(rec));
    ++count;
}

FitResult ScanSummary::fit() const {
    if (count == 0) throw EmptyInput("no scan records");
    FitResult out;
    out.c1_hat = std::nextafter(max_kappa2_over_eta, DBL_MAX);
    out.c2_hat = std::nextafter(out.c1_hat * max_eta_over_gamma_max, DBL_MAX);
    if (s_needed_max == 0) {
        out.s_hat = 1; // no row past the empirical p0: vacuously satisfied
    } else if (s_needed_max >= kStmt1Unsatisfied) {
        out.s_hat = -1; // not satisfied up to s = 64
    } else {
        out.s_hat = s_needed_max;
    }
    return out;
}

ScanRecord make_scan_record(u64 p, unsigned s) {
    const PrimeContext ctx = make_context(p);
    ScanRecord rec;
    rec.p = p;
    rec.kappa = kappa(ctx);
    rec.eta = mirimanoff_zero_count(ctx);
    rec.gamma_max = gamma_conjugates(ctx).gamma_max;
    rec.kappa2_over_eta =
        static_cast<double>(rec.kappa) * static_cast<double>(rec.kappa) / static_cast<double>(rec.eta);
    rec.eta_over_gamma_max = static_cast<double>(rec.eta) / rec.gamma_max;
    rec.kappa_over_sqrt_p = static_cast<double>(rec.kappa) / std::sqrt(static_cast<double>(p));
    rec.stmt1_margin =
        rec.gamma_max * std::pow(std::log(static_cast<double>(p)), static_cast<double>(s)) /
        static_cast<double>(p);
    return rec;
}

FitResult fit_constants(std::span<const ScanRecord> records) {
    if (records.empty()) throw EmptyInput("no scan records");
    std::vector<ScanRecord> sorted(records.begin(), records.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.p < b.p; });
    ScanSummary summary;
    for (const ScanRecord& rec : sorted) summary.absorb(rec);
    return summary.fit();
}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string csv_header() {
    return "p,kappa,eta,gamma_max,kappa2_over_eta,eta_over_gamma_max,kappa_over_sqrt_p,stmt1_margin";
}

std::string csv_row(const ScanRecord& rec) {
    std::string out = std::to_string(rec.p) + ',' + std::to_string(rec.kappa) + ',' +
                      std::to_string(rec.eta) + ',' + format_real(rec.gamma_max) + ',' +
                      format_real(rec.kappa2_over_eta) + ',' + format_real(rec.eta_over_gamma_max) +
                      ',' + format_real(rec.kappa_over_sqrt_p) + ',' + format_real(rec.stmt1_margin);
    return out;
}

namespace {

ScanRecord parse_csv_row(const std::string& line) {
    std::istringstream in(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (fields.size() != 8) throw Error("malformed CSV row: " + line);
    ScanRecord rec;
    rec.p = std::stoull(fields[0]);
    rec.kappa = std::stoull(fields[1]);
    rec.eta = std::stoull(fields[2]);
    rec.gamma_max = std::stod(fields[3]);
    rec.kappa2_over_eta = std::stod(fields[4]);
    rec.eta_over_gamma_max = std::stod(fields[5]);
    rec.kappa_over_sqrt_p = std::stod(fields[6]);
    rec.stmt1_margin = std::stod(fields[7]);
    return rec;
}

} // namespace

std::vector<ScanRecord> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open CSV file " + path);
    std::string line;
    if (!std::getline(in, line)) throw InvalidInput("empty CSV file " + path);
    if (line != csv_header()) throw InvalidInput("unexpected CSV header in " + path);
    std::vector<ScanRecord> records;
    while (std::getline(in, line)) {
        if (!line.empty()) records.push_back(parse_csv_row(line));
    }
    return records;
}

namespace {

using json = nlohmann::ordered_json;

struct CheckpointState {
    u64 last_completed_p = 0;
    u64 hash = 0;
    ScanSummary summary;
};

void write_checkpoint(const std::string& path, const CheckpointState& st) {
    json j;
    j["last_completed_p"] = st.last_completed_p;
    j["config_hash"] = st.hash;
    j["partial_summary"] = {
        {"count", st.summary.count},
        {"max_kappa2_over_eta", st.summary.max_kappa2_over_eta},
        {"max_eta_over_gamma_max", st.summary.max_eta_over_gamma_max},
        {"max_kappa_over_sqrt_p", st.summary.max_kappa_over_sqrt_p},
        {"min_stmt1_margin", st.summary.min_stmt1_margin},
        {"s_needed_max", st.summary.s_needed_max},
    };
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw Error("cannot write checkpoint " + tmp);
        out << j.dump() << '\n';
    }
    std::filesystem::rename(tmp, path); // atomic replace
}

CheckpointState read_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CheckpointCorrupt("cannot open checkpoint " + path);
    CheckpointState st;
    try {
        json j = json::parse(in);
        st.last_completed_p = j.at("last_completed_p").get<u64>();
        st.hash = j.at("config_hash").get<u64>();
        const json& s = j.at("partial_summary");
        st.summary.count = s.at("count").get<u64>();
        st.summary.max_kappa2_over_eta = s.at("max_kappa2_over_eta").get<double>();
        st.summary.max_eta_over_gamma_max = s.at("max_eta_over_gamma_max").get<double>();
        st.summary.max_kappa_over_sqrt_p = s.at("max_kappa_over_sqrt_p").get<double>();
        st.summary.min_stmt1_margin = s.at("min_stmt1_margin").get<double>();
        st.summary.s_needed_max = s.at("s_needed_max").get<int>();
    } catch (const json::exception& e) {
        throw CheckpointCorrupt("checkpoint " + path + " is unreadable: " + e.what());
    }
    return st;
}

} // namespace

ScanResult scan(const ScanConfig& config, const ScanProgress& progress) {
    if (config.p_min < 3 || config.p_min > config.p_max) {
        throw InvalidInput("scan range must satisfy 3 <= p_min <= p_max");
    }
    if (config.out_path.empty()) throw InvalidInput("scan needs an output CSV path");

    const u64 hash = config_hash(config);
    const bool checkpointing = !config.checkpoint_path.empty();

    // Resume state: rows already in the CSV (kept as raw lines so the bytes
    // survive the rewrite) plus the summary snapshot from the checkpoint.
    CheckpointState state;
    state.hash = hash;
    std::vector<std::string> kept_lines;
    std::vector<ScanRecord> kept_records;

    if (checkpointing && !config.restart && std::filesystem::exists(config.checkpoint_path)) {
        const CheckpointState previous = read_checkpoint(config.checkpoint_path);
        if (previous.hash != hash) {
            throw CheckpointCorrupt("checkpoint belongs to a different scan configuration");
        }
        state = previous;
        // Rows past the checkpoint may exist if the previous run died between
        // a CSV append and the checkpoint update; they are recomputed. Rows at
        // or before it are kept as raw lines so their bytes survive verbatim.
        std::ifstream existing(config.out_path);
        if (!existing) throw CheckpointCorrupt("checkpoint present but CSV is missing");
        std::string line;
        if (!std::getline(existing, line) || line != csv_header()) {
            throw CheckpointCorrupt("checkpoint present but CSV header is wrong");
        }
        while (std::getline(existing, line)) {
            if (line.empty()) continue;
            ScanRecord rec = parse_csv_row(line);
            if (rec.p <= state.last_completed_p) {
                kept_records.push_back(rec);
                kept_lines.push_back(line);
            }
        }
        if (kept_records.size() != state.summary.count) {
            throw CheckpointCorrupt("CSV row count does not match the checkpoint");
        }
    } else if (checkpointing && config.restart) {
        std::error_code ec;
        std::filesystem::remove(config.checkpoint_path, ec);
    }

    std::ofstream out(config.out_path, std::ios::trunc);
    if (!out) throw InvalidInput("cannot open output CSV " + config.out_path);
    out << csv_header() << '\n';
    for (const std::string& line : kept_lines) out << line << '\n';
    out.flush();

    const u64 resume_from = state.last_completed_p;
    std::vector<u64> todo;
    for (u64 p : primes_in_range(config.p_min, config.p_max)) {
        if (p > resume_from) todo.push_back(p);
    }

    ScanResult result;
    result.records = kept_records;
    result.summary = state.summary;

    // Workers pull primes off a shared index and park finished rows in
    // per-prime slots; this thread emits them strictly in p order, so the
    // CSV bytes cannot depend on the worker count.
    std::vector<std::optional<ScanRecord>> slots(todo.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::mutex mtx;
    std::condition_variable slot_ready;
    std::exception_ptr worker_error;

    const unsigned n_workers = std::max(1u, config.workers);
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned i = 0; i < n_workers; ++i) {
        pool.emplace_back([&] {
            while (!stop.load(std::memory_order_relaxed)) {
                const std::size_t idx = next.fetch_add(1);
                if (idx >= todo.size()) return;
                try {
                    ScanRecord rec = make_scan_record(todo[idx], config.s);
                    std::lock_guard lock(mtx);
                    slots[idx] = rec;
                    slot_ready.notify_all();
                } catch (...) {
                    std::lock_guard lock(mtx);
                    if (!worker_error) worker_error = std::current_exception();
                    stop.store(true);
                    slot_ready.notify_all();
                    return;
                }
            }
        });
    }

    u64 since_checkpoint = 0;
    bool stopped_early = false;
    for (std::size_t idx = 0; idx < todo.size() && !stopped_early; ++idx) {
        ScanRecord rec;
        {
            std::unique_lock lock(mtx);
            slot_ready.wait(lock, [&] { return slots[idx].has_value() || worker_error; });
            if (worker_error) break;
            rec = *slots[idx];
            slots[idx].reset();
        }
        out << csv_row(rec) << '\n';
        result.records.push_back(rec);
        result.summary.absorb(rec);
        state.last_completed_p = rec.p;
        state.summary = result.summary;
        if (checkpointing && ++since_checkpoint >= kCheckpointBatch) {
            out.flush();
            write_checkpoint(config.checkpoint_path, state);
            since_checkpoint = 0;
        }
        if (progress && !progress(rec)) stopped_early = true;
    }

    stop.store(true);
    slot_ready.notify_all();
    for (auto& th : pool) th.join();
    if (worker_error) std::rethrow_exception(worker_error);

    out.flush();
    if (stopped_early) {
        result.completed = false;
        return result; // deliberately no final checkpoint: mimics a kill
    }
    if (checkpointing) write_checkpoint(config.checkpoint_path, state);
    result.completed = true;
    return result;
}

} // namespace gammax
