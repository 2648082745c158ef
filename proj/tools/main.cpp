#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "concord/clustering.hpp"
#include "concord/crisp_indices.hpp"
#include "concord/fuzzy_concordance.hpp"
#include "concord/io.hpp"
#include "concord/simulation.hpp"
#include "concord/version.hpp"

using namespace concord;

namespace {

std::string fmt4(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

CsvOptions csv_options(const std::string& header, const std::string& delimiter,
                       bool renormalize) {
    if (delimiter.size() != 1)
        throw std::invalid_argument("delimiter must be a single character");
    CsvOptions opts;
    opts.delimiter = delimiter[0];
    opts.header = header == "yes"  ? HeaderMode::yes
                  : header == "no" ? HeaderMode::no
                                   : HeaderMode::automatic;
    opts.renormalize = renormalize;
    return opts;
}

void add_csv_flags(CLI::App* cmd, std::string& header, std::string& delimiter) {
    cmd->add_option("--header", header, "treat the first row as a header: auto|yes|no")
        ->check(CLI::IsMember({"auto", "yes", "no"}));
    cmd->add_option("--delimiter", delimiter, "field delimiter (default ,)");
}

struct ExpectFlags {
    std::string mode = "closed";
    std::size_t h = 1000;
    std::uint64_t seed = 0;
    std::size_t enum_limit = 8;
};

void add_expect_flags(CLI::App* cmd, ExpectFlags& e, bool with_seed = true) {
    cmd->set_help_flag("--help", "print help");  // frees -h for the --h option below
    cmd->add_option("--expect", e.mode, "expectation mode: closed|enum|mc")
        ->check(CLI::IsMember(
            {"closed", "closed_form", "enum", "enumeration", "mc", "monte_carlo"}));
    cmd->add_option("--h", e.h, "monte carlo permutation count");
    if (with_seed) cmd->add_option("--seed", e.seed, "random seed");
    cmd->add_option("--enum-limit", e.enum_limit, "max pair count for --expect enum");
}

ExpectationConfig expectation_config(const ExpectFlags& e) {
    ExpectationConfig cfg;
    cfg.mode = expectation_mode_from_string(e.mode);
    cfg.h = e.h;
    cfg.seed = e.seed;
    cfg.enumeration_limit = e.enum_limit;
    cfg.validate();
    return cfg;
}

struct CompareArgs {
    std::string first, second;
    ExpectFlags expect;
    bool clamp = false;
    bool json = false;
    bool renormalize = false;
    std::string format = "auto";
    std::string header = "auto";
    std::string delimiter = ",";
    std::string out;
};

int run_compare(const CompareArgs& a) {
    const CsvOptions opts = csv_options(a.header, a.delimiter, a.renormalize);
    const PartitionFormat format = a.format == "membership" ? PartitionFormat::membership
                                   : a.format == "labels"   ? PartitionFormat::labels
                                                            : PartitionFormat::automatic;
    const PartitionFile p = read_partition_file(a.first, opts, format);
    const PartitionFile q = read_partition_file(a.second, opts, format);

    const ExpectationConfig cfg = expectation_config(a.expect);
    ComparisonResult res = aci(p.partition, q.partition, cfg);
    if (a.clamp) res.aci = res.aci_clamped;

    std::optional<std::map<std::string, double>> crisp;
    if (p.crisp && q.crisp) {
        const PairCounts pc = pair_counts(p.partition.to_crisp(), q.partition.to_crisp());
        std::map<std::string, double> m = related_indices(pc);
        m["rand"] = rand_index(pc);
        m["adjusted_rand"] = ari_cardinals(pc);
        crisp = std::move(m);
    }

    const std::string report =
        a.json ? report_to_json(res, cfg, crisp) : report_to_text(res, cfg, crisp);
    std::fputs(report.c_str(), stdout);
    if (!a.out.empty()) write_text_file(a.out, report);
    return 0;
}

struct ClusterArgs {
    std::string algorithm;
    std::string data_path;
    int k = 2;
    std::uint64_t seed = 0;
    double fuzzifier = 2.0;
    int max_iter = 300;
    double tol = 1e-6;
    int n_init = 5;
    bool standardize = false;
    std::string header = "auto";
    std::string delimiter = ",";
    std::string out;
};

int run_cluster(const ClusterArgs& a) {
    const CsvOptions opts = csv_options(a.header, a.delimiter, false);
    std::vector<std::string> dropped;
    Dataset data = read_dataset_csv(a.data_path, opts, &dropped);
    if (a.standardize) data = standardized(data);

    ClusteringConfig cfg;
    cfg.k = a.k;
    cfg.seed = a.seed;
    cfg.fuzzifier = a.fuzzifier;
    cfg.max_iter = a.max_iter;
    cfg.tol = a.tol;
    cfg.n_init = a.n_init;

    nlohmann::json side;
    side["version"] = version;
    side["algorithm"] = a.algorithm;
    side["input"] = a.data_path;
    side["dropped_columns"] = dropped;
    side["config"] = {{"k", a.k},           {"seed", a.seed},   {"max_iter", a.max_iter},
                      {"tol", a.tol},       {"n_init", a.n_init},
                      {"standardize", a.standardize}};

    bool converged = true;
    if (a.algorithm == "fcm") {
        side["config"]["fuzzifier"] = a.fuzzifier;
        const FcmResult r = fcm(data, cfg);
        write_membership_csv(a.out, r.partition);
        side["objective"] = r.objective;
        side["iterations"] = r.iterations;
        side["converged"] = r.converged;
        converged = r.converged;
    } else if (a.algorithm == "pd") {
        const PdResult r = pd_cluster(data, cfg);
        write_membership_csv(a.out, r.partition);
        side["objective"] = r.objective;
        side["iterations"] = r.iterations;
        side["converged"] = r.converged;
        converged = r.converged;
    } else {
        const KmeansResult r = kmeans(data, cfg);
        write_labels_csv(a.out, r.labels);
        side["inertia"] = r.inertia;
        side["iterations"] = r.iterations;
        side["converged"] = r.converged;
        converged = r.converged;
    }
    write_text_file(a.out + ".json", side.dump(2) + "\n");
    std::printf("wrote %s\n", a.out.c_str());
    if (!converged) {
        std::fprintf(stderr, "warning: not converged within %d iterations\n", a.max_iter);
        return 4;
    }
    return 0;
}

struct TruthArgs {
    std::string data_path;
    std::string label_column;
    std::string header = "auto";
    std::string delimiter = ",";
    std::string out;
};

int run_truth(const TruthArgs& a) {
    const CsvOptions opts = csv_options(a.header, a.delimiter, false);
    const LabeledDatasetFile file = read_labeled_dataset_csv(a.data_path, a.label_column, opts);
    const FuzzyPartition truth = true_fuzzy_partition(file.data, file.labels);
    write_membership_csv(a.out, truth, file.label_names);

    nlohmann::json side;
    side["version"] = version;
    side["input"] = a.data_path;
    side["n"] = truth.size();
    side["k"] = truth.clusters();
    side["classes"] = file.label_names;
    side["features"] = file.feature_names;
    side["dropped_columns"] = file.dropped_columns;
    write_text_file(a.out + ".json", side.dump(2) + "\n");
    std::printf("wrote %s\n", a.out.c_str());
    return 0;
}

void print_metadata(const StudyResult& res) {
    std::printf("# study: %s\n", res.study.c_str());
    for (const auto& [key, value] : res.metadata)
        std::printf("# %s: %s\n", key.c_str(), value.c_str());
}

void print_rows_table(const StudyResult& res) {
    std::vector<std::string> designs;
    std::vector<std::string> names;
    for (const StudyRow& row : res.rows) {
        if (std::find(designs.begin(), designs.end(), row.design) == designs.end())
            designs.push_back(row.design);
        if (std::find(names.begin(), names.end(), row.index) == names.end())
            names.push_back(row.index);
    }
    std::size_t width = 6;
    for (const std::string& d : designs) width = std::max(width, d.size());
    std::size_t col = 8;
    for (const std::string& n : names) col = std::max(col, n.size());

    std::printf("%-*s", static_cast<int>(width + 2), "design");
    for (const std::string& n : names) std::printf("%*s", static_cast<int>(col + 2), n.c_str());
    std::printf("\n");
    for (const std::string& d : designs) {
        std::printf("%-*s", static_cast<int>(width + 2), d.c_str());
        for (const std::string& n : names) {
            std::string cell = "-";
            for (const StudyRow& row : res.rows)
                if (row.design == d && row.index == n) {
                    cell = fmt4(row.value);
                    break;
                }
            std::printf("%*s", static_cast<int>(col + 2), cell.c_str());
        }
        std::printf("\n");
    }
}

void print_matrix_table(const NamedMatrix& m) {
    std::size_t width = m.name.size();
    for (const std::string& r : m.row_labels) width = std::max(width, r.size());
    std::printf("%-*s", static_cast<int>(width + 2), m.name.c_str());
    for (const std::string& c : m.col_labels) std::printf("%8s", c.c_str());
    std::printf("\n");
    for (std::size_t i = 0; i < m.values.rows(); ++i) {
        std::printf("%-*s", static_cast<int>(width + 2),
                    i < m.row_labels.size() ? m.row_labels[i].c_str() : "");
        for (std::size_t j = 0; j < m.values.cols(); ++j)
            std::printf("%8s", fmt4(m.values(i, j)).c_str());
        std::printf("\n");
    }
}

void print_study(const StudyResult& res) {
    print_metadata(res);
    if (!res.rows.empty() && res.rows.size() <= 60) print_rows_table(res);
    for (const NamedMatrix& m : res.matrices) {
        std::printf("\n");
        print_matrix_table(m);
    }
}

void write_study(const StudyResult& res, const std::string& out_dir) {
    if (out_dir.empty()) return;
    std::filesystem::create_directories(out_dir);
    const std::string base = out_dir + "/" + res.study;
    if (!res.rows.empty()) write_text_file(base + "_rows.csv", study_rows_to_csv(res));
    for (const NamedMatrix& m : res.matrices)
        write_text_file(base + "_" + m.name + ".csv", matrix_to_csv(m));
    write_text_file(base + "_meta.json", study_metadata_to_json(res));
    std::printf("wrote %s_*.csv and %s_meta.json\n", base.c_str(), base.c_str());
}

struct SimulateArgs {
    std::uint64_t seed = 0;
    ExpectFlags expect;
    std::string out;
    bool vs_truth = false;
    std::vector<std::string> data_paths;
    std::string label_column;
    bool no_synthetic = false;
    std::string header = "auto";
    std::string delimiter = ",";
    std::size_t n_datasets = 100;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"crisp and fuzzy clustering partition comparison"};
    app.set_version_flag("--version", std::string(version));
    app.require_subcommand(1);

    CompareArgs ca;
    auto* cmp = app.add_subcommand("compare", "compare two partition files (NDC, ACI, indices)");
    cmp->add_option("first", ca.first, "membership or label CSV")->required();
    cmp->add_option("second", ca.second, "membership or label CSV")->required();
    add_expect_flags(cmp, ca.expect);
    cmp->add_flag("--clamp", ca.clamp, "report the aci clamped to [-1, 1]");
    cmp->add_flag("--json", ca.json, "emit the report as JSON");
    cmp->add_flag("--renormalize", ca.renormalize, "rescale membership rows to sum 1");
    cmp->add_option("--format", ca.format, "input interpretation: auto|membership|labels")
        ->check(CLI::IsMember({"auto", "membership", "labels"}));
    add_csv_flags(cmp, ca.header, ca.delimiter);
    cmp->add_option("--out", ca.out, "also write the report to this file");

    ClusterArgs cla;
    auto* clu = app.add_subcommand("cluster", "cluster a dataset CSV");
    clu->add_option("algorithm", cla.algorithm, "fcm|pd|kmeans")
        ->required()
        ->check(CLI::IsMember({"fcm", "pd", "kmeans"}));
    clu->add_option("data", cla.data_path, "numeric dataset CSV")->required();
    clu->add_option("--k", cla.k, "number of clusters")->required();
    clu->add_option("--seed", cla.seed, "random seed");
    clu->add_option("--fuzzifier", cla.fuzzifier, "fcm exponent, > 1");
    clu->add_option("--max-iter", cla.max_iter, "iteration cap");
    clu->add_option("--tol", cla.tol, "center-shift convergence threshold");
    clu->add_option("--n-init", cla.n_init, "seeded restarts, best kept");
    clu->add_flag("--standardize", cla.standardize, "z-score features first");
    add_csv_flags(clu, cla.header, cla.delimiter);
    clu->add_option("--out", cla.out, "output CSV (memberships, or labels for kmeans)")
        ->required();

    TruthArgs ta;
    auto* tru = app.add_subcommand(
        "truth", "reference fuzzy partition of a labeled dataset (class centers + pd)");
    tru->add_option("data", ta.data_path, "labeled dataset CSV")->required();
    tru->add_option("--label-col", ta.label_column,
                    "label column name or 0-based index (default: last column)");
    add_csv_flags(tru, ta.header, ta.delimiter);
    tru->add_option("--out", ta.out, "output membership CSV")->required();

    SimulateArgs sa;
    auto* sim = app.add_subcommand("simulate", "run a simulation study");
    sim->require_subcommand(1);
    auto add_common = [&](CLI::App* c) {
        c->add_option("--seed", sa.seed, "study seed");
        add_expect_flags(c, sa.expect, false);
        c->add_option("--out", sa.out, "output directory for CSV/JSON files");
    };
    auto* s1 = sim->add_subcommand("study1", "fuzzy-vs-crisp: mixtures, fcm at the true C");
    add_common(s1);
    auto* s2 = sim->add_subcommand("study2", "fuzzy-vs-fuzzy: 7x7 ndc/aci matrices over C=2..8");
    add_common(s2);
    s2->add_flag("--vs-truth", sa.vs_truth, "baseline is the crisp truth, not fcm at true C");
    auto* s3 = sim->add_subcommand("study3", "true-vs-estimated: pd clustering");
    add_common(s3);
    s3->add_option("--data", sa.data_paths, "labeled dataset CSV (repeatable)");
    s3->add_option("--label-col", sa.label_column, "label column for --data files");
    s3->add_flag("--no-synthetic", sa.no_synthetic, "skip the built-in synthetic designs");
    add_csv_flags(s3, sa.header, sa.delimiter);
    auto* sb = sim->add_subcommand("bias", "mean(aci - ari) over random mixtures + kmeans");
    add_common(sb);
    sb->add_option("--n-datasets", sa.n_datasets, "number of random data sets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (cmp->parsed()) return run_compare(ca);
        if (clu->parsed()) return run_cluster(cla);
        if (tru->parsed()) return run_truth(ta);
        const ExpectationConfig ecfg = expectation_config(sa.expect);
        if (s1->parsed()) {
            const StudyResult res = study1(sa.seed, ecfg);
            print_study(res);
            write_study(res, sa.out);
            return 0;
        }
        if (s2->parsed()) {
            const StudyResult res = study2(sa.seed, ecfg, sa.vs_truth);
            print_study(res);
            write_study(res, sa.out);
            return 0;
        }
        if (s3->parsed()) {
            const CsvOptions opts = csv_options(sa.header, sa.delimiter, false);
            std::vector<LabeledDataset> datasets;
            for (const std::string& path : sa.data_paths) {
                LabeledDatasetFile file = read_labeled_dataset_csv(path, sa.label_column, opts);
                datasets.push_back({std::filesystem::path(path).stem().string(),
                                    std::move(file.data), std::move(file.labels)});
            }
            const StudyResult res = study3(sa.seed, datasets, ecfg, !sa.no_synthetic);
            print_study(res);
            write_study(res, sa.out);
            return 0;
        }
        if (sb->parsed()) {
            const BiasResult res = bias_experiment(sa.n_datasets, sa.seed, ecfg);
            print_metadata(res.detail);
            std::printf("mean(aci - ari) = %.17g over %zu data sets\n", res.mean_diff,
                        sa.n_datasets);
            write_study(res.detail, sa.out);
            return 0;
        }
        return 2;
    } catch (const ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
