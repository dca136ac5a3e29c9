#include "imcmoead/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include <fmt/core.h>

namespace imcmoead {

using nlohmann::json;

void ExperimentConfig::validate(const ProblemRegistry& registry) const {
    if (problems.empty()) throw ConfigError("experiment: no problems listed");
    if (algorithms.empty()) throw ConfigError("experiment: no algorithms listed");
    if (repetitions < 1) throw ConfigError("experiment: repetitions must be >= 1");
    if (hv_samples < 1) throw ConfigError("experiment: hv_samples must be >= 1");
    for (const auto& name : problems) {
        if (!registry.contains(name)) throw ConfigError(fmt::format("experiment: unknown problem '{}'", name));
    }
    std::set<std::string> ids;
    for (const auto& a : algorithms) {
        if (!ids.insert(a.id).second) throw ConfigError(fmt::format("experiment: duplicate algorithm id '{}'", a.id));
        if (a.type != "im-c-moead" && a.type != "random-search")
            throw ConfigError(fmt::format("experiment: unknown algorithm type '{}'", a.type));
        if (a.config.max_fe < 1) throw ConfigError(fmt::format("algorithm '{}': max_fe must be >= 1", a.id));
    }
}

ExperimentConfig experiment_config_from_json(const json& j) {
    ExperimentConfig cfg;
    try {
        cfg.problems = j.at("problems").get<std::vector<std::string>>();
        cfg.repetitions = j.value("repetitions", cfg.repetitions);
        cfg.seed = j.value("seed", cfg.seed);
        cfg.hv_samples = j.value("hv_samples", cfg.hv_samples);
        cfg.reference_resolution = j.value("reference_resolution", cfg.reference_resolution);

        std::size_t index = 0;
        for (const auto& a : j.at("algorithms")) {
            AlgorithmEntry entry;
            entry.id = a.value("id", fmt::format("alg{}", index++));
            entry.type = a.value("type", entry.type);
            AlgoConfig& c = entry.config;
            c.N = a.value("N", c.N);
            c.K = a.value("K", c.K);
            c.L = a.value("L", c.L);
            c.T = a.value("T", c.T);
            c.max_fe = a.value("max_fe", c.max_fe);
            c.eq_tol = a.value("eq_tol", c.eq_tol);
            c.pm = a.value("pm", c.pm);
            c.eta = a.value("eta", c.eta);
            c.kmeans_iters = a.value("kmeans_iters", c.kmeans_iters);
            if (a.contains("replacement")) c.rule = replacement_rule_from_string(a.at("replacement").get<std::string>());
            cfg.algorithms.push_back(std::move(entry));
        }
    } catch (const json::exception& e) {
        throw ConfigError(fmt::format("experiment config: {}", e.what()));
    }
    return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot open config '{}'", path.string()));
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(fmt::format("config '{}': {}", path.string(), e.what()));
    }
    return experiment_config_from_json(j);
}

json to_json(const RunRecord& r) {
    json gens = json::array();
    for (const auto& g : r.generations) {
        json jg = {{"gen", g.gen},           {"feasible", g.feasible}, {"best_cv", g.best_cv},
                   {"mean_cv", g.mean_cv},   {"fe_used", g.fe_used},   {"replacements", g.replacements}};
        if (g.hv) jg["hv"] = *g.hv;
        gens.push_back(std::move(jg));
    }
    json j = {
        {"problem", r.problem},
        {"config", r.config_id},
        {"seed", r.seed},
        {"repetition", r.repetition},
        {"front", r.front},
        {"hv",
         {{"value", r.hv.value},
          {"method", to_string(r.hv.method)},
          {"samples", r.hv.samples},
          {"std_error", r.hv.std_error},
          {"ref", r.hv.ref}}},
        {"norm_ideal", r.norm_ideal},
        {"norm_nadir", r.norm_nadir},
        {"wall_time_s", r.wall_time_s},
        {"fe_used", r.fe_used},
        {"generations", std::move(gens)},
    };
    j["error"] = r.error ? json(*r.error) : json(nullptr);
    return j;
}

RunRecord run_record_from_json(const json& j) {
    RunRecord r;
    r.problem = j.at("problem").get<std::string>();
    r.config_id = j.at("config").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.repetition = j.at("repetition").get<std::size_t>();
    r.front = j.at("front").get<std::vector<Vector>>();
    const auto& hv = j.at("hv");
    r.hv.value = hv.at("value").get<double>();
    r.hv.method = hv.at("method").get<std::string>() == "exact" ? HVMethod::Exact : HVMethod::MonteCarlo;
    r.hv.samples = hv.at("samples").get<std::size_t>();
    r.hv.std_error = hv.at("std_error").get<double>();
    r.hv.ref = hv.at("ref").get<Vector>();
    r.norm_ideal = j.at("norm_ideal").get<Vector>();
    r.norm_nadir = j.at("norm_nadir").get<Vector>();
    r.wall_time_s = j.at("wall_time_s").get<double>();
    r.fe_used = j.at("fe_used").get<std::size_t>();
    for (const auto& jg : j.at("generations")) {
        GenerationStats g;
        g.gen = jg.at("gen").get<std::size_t>();
        g.feasible = jg.at("feasible").get<std::size_t>();
        g.best_cv = jg.at("best_cv").get<double>();
        g.mean_cv = jg.at("mean_cv").get<double>();
        g.fe_used = jg.at("fe_used").get<std::size_t>();
        g.replacements = jg.at("replacements").get<std::size_t>();
        if (jg.contains("hv")) g.hv = jg.at("hv").get<double>();
        r.generations.push_back(g);
    }
    if (!j.at("error").is_null()) r.error = j.at("error").get<std::string>();
    return r;
}

void write_runs_jsonl(const std::filesystem::path& path, const std::vector<RunRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
    for (const auto& r : records) out << to_json(r).dump() << '\n';
}

std::vector<RunRecord> read_runs_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(fmt::format("cannot read '{}'", path.string()));
    std::vector<RunRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        records.push_back(run_record_from_json(json::parse(line)));
    }
    return records;
}

std::vector<Vector> feasible_front(const Population& population) {
    std::vector<Vector> pts;
    for (const auto& s : population)
        if (s.feasible) pts.push_back(s.f);
    return nondominated(std::move(pts));
}

RunRecord execute_run(const ProblemSpec& spec, const AlgorithmEntry& algorithm, std::uint64_t seed,
                      std::size_t repetition) {
    RunRecord record;
    record.problem = spec.problem.name;
    record.config_id = algorithm.id;
    record.seed = seed;
    record.repetition = repetition;

    AlgoConfig cfg = algorithm.config;
    cfg.seed = seed;
    const auto start = std::chrono::steady_clock::now();
    RunResult result = algorithm.type == "random-search" ? run_random_search(spec.problem, cfg)
                                                         : run(spec.problem, cfg);
    record.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    record.front = feasible_front(result.population);
    record.fe_used = result.fe_used;
    record.generations = std::move(result.stats);
    return record;
}

Vector Normalization::apply(const Vector& f) const {
    Vector out(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) {
        const double width = nadir[j] - ideal[j];
        out[j] = (f[j] - ideal[j]) / (width > 0.0 ? width : 1.0);
    }
    return out;
}

Normalization normalization_for(const std::vector<Vector>& reference, const std::vector<RunRecord>& records,
                                const std::string& problem) {
    std::vector<Vector> pool = reference;
    for (const auto& r : records)
        if (r.problem == problem && !r.error) pool.insert(pool.end(), r.front.begin(), r.front.end());
    pool = nondominated(std::move(pool));

    Normalization norm;
    if (pool.empty()) return norm;
    const std::size_t m = pool.front().size();
    norm.ideal.assign(m, std::numeric_limits<double>::infinity());
    norm.nadir.assign(m, -std::numeric_limits<double>::infinity());
    for (const auto& p : pool) {
        for (std::size_t j = 0; j < m; ++j) {
            norm.ideal[j] = std::min(norm.ideal[j], p[j]);
            norm.nadir[j] = std::max(norm.nadir[j], p[j]);
        }
    }
    return norm;
}

HVResult normalized_hypervolume(const std::vector<Vector>& front, const Normalization& norm, std::size_t mc_samples,
                                std::uint64_t seed) {
    HVResult result;
    if (norm.ideal.empty()) return result;
    const Vector ref(norm.ideal.size(), 1.1);
    std::vector<Vector> scaled;
    scaled.reserve(front.size());
    for (const auto& f : front) scaled.push_back(norm.apply(f));
    Rng rng(Rng::mix(seed));
    return hypervolume(scaled, ref, mc_samples, rng);
}

namespace {

std::vector<Vector> reference_or_empty(const ProblemSpec& spec, std::size_t resolution) {
    try {
        return reference_front(spec, resolution);
    } catch (const UnsupportedOracle& e) {
        warn(fmt::format("{}; normalizing by observed fronts only", e.what()));
        return {};
    }
}

}  // namespace

void assign_hypervolumes(std::vector<RunRecord>& records, const ProblemRegistry& registry, std::size_t mc_samples,
                         std::size_t reference_resolution) {
    std::vector<std::string> problems;
    for (const auto& r : records)
        if (std::find(problems.begin(), problems.end(), r.problem) == problems.end()) problems.push_back(r.problem);

    for (const auto& name : problems) {
        try {
            const auto reference = reference_or_empty(registry.make(name), reference_resolution);
            const Normalization norm = normalization_for(reference, records, name);
            for (auto& r : records) {
                if (r.problem != name || r.error) continue;
                r.norm_ideal = norm.ideal;
                r.norm_nadir = norm.nadir;
                r.hv = normalized_hypervolume(r.front, norm, mc_samples, r.seed);
            }
        } catch (const std::exception& e) {
            for (auto& r : records)
                if (r.problem == name && !r.error) r.error = fmt::format("hypervolume: {}", e.what());
        }
    }
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& config, const ProblemRegistry& registry) {
    config.validate(registry);

    struct Job {
        std::size_t problem;
        std::size_t algorithm;
        std::size_t repetition;
    };
    std::vector<Job> jobs;
    for (std::size_t p = 0; p < config.problems.size(); ++p)
        for (std::size_t a = 0; a < config.algorithms.size(); ++a)
            for (std::size_t rep = 0; rep < config.repetitions; ++rep) jobs.push_back({p, a, rep});

    std::vector<ProblemSpec> specs;
    for (const auto& name : config.problems) specs.push_back(registry.make(name));

    std::vector<RunRecord> records(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            const Job& job = jobs[i];
            const auto& spec = specs[job.problem];
            const auto& algorithm = config.algorithms[job.algorithm];
            const std::uint64_t seed = config.seed + job.repetition;
            try {
                records[i] = execute_run(spec, algorithm, seed, job.repetition);
            } catch (const std::exception& e) {
                RunRecord failed;
                failed.problem = spec.problem.name;
                failed.config_id = algorithm.id;
                failed.seed = seed;
                failed.repetition = job.repetition;
                failed.error = e.what();
                records[i] = std::move(failed);
            }
        }
    };

    const std::size_t workers = std::clamp<std::size_t>(config.jobs, 1, std::max<std::size_t>(jobs.size(), 1));
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    assign_hypervolumes(records, registry, config.hv_samples, config.reference_resolution);
    return records;
}

namespace {

double sample_std(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

SummaryTable summarize(const std::vector<RunRecord>& records, std::optional<std::string> baseline, double alpha) {
    if (records.empty()) throw std::invalid_argument("summarize: no records");

    SummaryTable table;
    std::vector<std::string> problems;
    std::map<std::pair<std::string, std::string>, std::vector<double>> samples;
    for (const auto& r : records) {
        if (std::find(problems.begin(), problems.end(), r.problem) == problems.end()) problems.push_back(r.problem);
        if (std::find(table.configs.begin(), table.configs.end(), r.config_id) == table.configs.end())
            table.configs.push_back(r.config_id);
        if (!r.error) samples[{r.problem, r.config_id}].push_back(r.hv.value);
    }
    table.baseline = baseline.value_or(table.configs.front());
    for (const auto& c : table.configs)
        if (c != table.baseline) table.totals[c] = {};

    for (const auto& problem : problems) {
        SummaryRow row;
        row.problem = problem;
        const auto& base = samples[{problem, table.baseline}];
        for (const auto& config : table.configs) {
            const auto& hv = samples[{problem, config}];
            SummaryCell cell;
            cell.config_id = config;
            cell.runs = hv.size();
            if (!hv.empty()) {
                cell.mean = std::accumulate(hv.begin(), hv.end(), 0.0) / static_cast<double>(hv.size());
                cell.std = sample_std(hv, cell.mean);
            }
            if (config != table.baseline && hv.size() >= 3 && base.size() >= 3) {
                cell.comparison = wilcoxon_rank_sum(hv, base, alpha);
                auto& t = table.totals[config];
                switch (cell.comparison->verdict) {
                    case Verdict::Better: ++t.wins; break;
                    case Verdict::Equivalent: ++t.ties; break;
                    case Verdict::Worse: ++t.losses; break;
                }
            }
            row.cells.push_back(std::move(cell));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string format_sci(double value, int digits) {
    const std::string s = fmt::format("{:.{}e}", value, digits);
    const auto e = s.find('e');
    const int exponent = std::stoi(s.substr(e + 1));
    return fmt::format("{}e{}{}", s.substr(0, e), exponent < 0 ? '-' : '+', std::abs(exponent));
}

std::string format_mean_std(double mean, double std) {
    return fmt::format("{} ({})", format_sci(mean, 4), format_sci(std, 2));
}

std::string summary_csv(const SummaryTable& table) {
    std::ostringstream out;
    out << "problem,config,runs,mean,std,mean_std,verdict,p_value\n";
    for (const auto& row : table.rows) {
        for (const auto& c : row.cells) {
            out << row.problem << ',' << c.config_id << ',' << c.runs << ',' << fmt::format("{:.17g}", c.mean) << ','
                << fmt::format("{:.17g}", c.std) << ',' << format_mean_std(c.mean, c.std) << ',';
            if (c.comparison) out << to_symbol(c.comparison->verdict) << ',' << fmt::format("{:.6g}", c.comparison->p_value);
            else out << ',';
            out << '\n';
        }
    }
    for (const auto& config : table.configs) {
        if (config == table.baseline) continue;
        const auto& t = table.totals.at(config);
        out << "w/t/l," << config << ",,,,," << fmt::format("{}/{}/{}", t.wins, t.ties, t.losses) << ",\n";
    }
    return out.str();
}

std::string summary_text(const SummaryTable& table) {
    std::ostringstream out;
    out << fmt::format("{:<16}", "problem");
    for (const auto& c : table.configs) out << fmt::format(" {:>24}", c == table.baseline ? c + " (base)" : c);
    out << '\n';
    for (const auto& row : table.rows) {
        out << fmt::format("{:<16}", row.problem);
        for (const auto& c : row.cells) {
            std::string cell = format_mean_std(c.mean, c.std);
            if (c.comparison) cell += " " + to_symbol(c.comparison->verdict);
            out << fmt::format(" {:>24}", cell);
        }
        out << '\n';
    }
    out << fmt::format("{:<16}", "w/t/l");
    for (const auto& c : table.configs) {
        if (c == table.baseline) {
            out << fmt::format(" {:>24}", "");
            continue;
        }
        const auto& t = table.totals.at(c);
        out << fmt::format(" {:>24}", fmt::format("{}/{}/{}", t.wins, t.ties, t.losses));
    }
    out << '\n';
    return out.str();
}

std::vector<const RunRecord*> best_runs(const std::vector<RunRecord>& records) {
    std::vector<const RunRecord*> best;
    for (const auto& r : records) {
        if (r.error) continue;
        auto it = std::find_if(best.begin(), best.end(), [&](const RunRecord* b) {
            return b->problem == r.problem && b->config_id == r.config_id;
        });
        if (it == best.end()) best.push_back(&r);
        else if (r.hv.value > (*it)->hv.value) *it = &r;
    }
    return best;
}

std::string plot_filename(const RunRecord& record) {
    auto clean = [](std::string s) {
        for (char& c : s)
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
        return s;
    };
    return fmt::format("{}__{}.svg", clean(record.problem), clean(record.config_id));
}

std::vector<std::filesystem::path> write_front_plots(const std::filesystem::path& dir,
                                                     const std::vector<RunRecord>& records,
                                                     const ProblemRegistry& registry,
                                                     std::size_t reference_resolution) {
    std::map<std::string, std::vector<Vector>> references;
    std::vector<std::filesystem::path> written;
    for (const RunRecord* r : best_runs(records)) {
        auto it = references.find(r->problem);
        if (it == references.end()) {
            std::vector<Vector> ref;
            if (registry.contains(r->problem)) ref = reference_or_empty(registry.make(r->problem), reference_resolution);
            it = references.emplace(r->problem, std::move(ref)).first;
        }
        const auto path = dir / plot_filename(*r);
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
        out << emit_front_plot(*r, it->second);
        written.push_back(path);
    }
    return written;
}

void write_experiment_outputs(const std::filesystem::path& dir, const std::vector<RunRecord>& records,
                              const ProblemRegistry& registry, std::size_t reference_resolution) {
    std::filesystem::create_directories(dir);
    write_runs_jsonl(dir / "runs.jsonl", records);
    {
        std::ofstream out(dir / "summary.csv", std::ios::binary);
        if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", (dir / "summary.csv").string()));
        out << summary_csv(summarize(records));
    }
    write_front_plots(dir, records, registry, reference_resolution);
}

}  // namespace imcmoead
