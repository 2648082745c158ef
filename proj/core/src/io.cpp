#include "concord/io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "concord/version.hpp"
#include <json.hpp>

namespace concord {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt4(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* begin = s.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    return end == begin + s.size();
}

std::string trimmed(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && (s[a] == ' ' || s[a] == '\t' || s[a] == '\r')) ++a;
    while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t' || s[b - 1] == '\r')) --b;
    return s.substr(a, b - a);
}

/// One CSV record; double quotes wrap fields that contain the delimiter, a
/// doubled quote escapes a literal one.
std::vector<std::string> split_fields(const std::string& line, char delim) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += ch;
            }
        } else if (ch == '"' && trimmed(cur).empty()) {
            quoted = true;
            cur.clear();
        } else if (ch == delim) {
            fields.push_back(trimmed(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    fields.push_back(trimmed(cur));
    return fields;
}

std::string quoted_field(const std::string& s, char delim = ',') {
    if (s.find(delim) == std::string::npos && s.find('"') == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

struct CsvTable {
    std::vector<std::string> header;               // empty when the file has none
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers;         // 1-based file line per data row
};

CsvTable read_csv(const std::string& path, const CsvOptions& opts) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open");

    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    std::size_t width = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (trimmed(line).empty()) continue;
        std::vector<std::string> fields = split_fields(line, opts.delimiter);
        if (first) {
            first = false;
            width = fields.size();
            bool as_header = opts.header == HeaderMode::yes;
            if (opts.header == HeaderMode::automatic) {
                for (const std::string& f : fields) {
                    double v;
                    if (!parse_double(f, v)) {
                        as_header = true;
                        break;
                    }
                }
            }
            if (as_header) {
                table.header = std::move(fields);
                continue;
            }
        }
        if (fields.size() != width)
            throw ParseError(path + ": line " + std::to_string(line_no) + " has " +
                             std::to_string(fields.size()) + " fields, expected " +
                             std::to_string(width));
        table.rows.push_back(std::move(fields));
        table.line_numbers.push_back(line_no);
    }
    if (table.rows.empty()) throw ParseError(path + ": no data rows");
    return table;
}

double cell_as_double(const CsvTable& table, const std::string& path, std::size_t row,
                      std::size_t col) {
    double v;
    if (!parse_double(table.rows[row][col], v))
        throw ParseError(path + ": line " + std::to_string(table.line_numbers[row]) +
                         ", column " + std::to_string(col + 1) + ": not a number: '" +
                         table.rows[row][col] + "'");
    return v;
}

FuzzyPartition membership_from_table(const CsvTable& table, const std::string& path,
                                     const CsvOptions& opts) {
    Matrix m(table.rows.size(), table.rows.front().size());
    for (std::size_t i = 0; i < table.rows.size(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = cell_as_double(table, path, i, j);
    try {
        return FuzzyPartition(std::move(m), opts.renormalize);
    } catch (const std::invalid_argument& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::vector<int> encode_labels(const std::vector<std::string>& raw,
                               std::vector<std::string>& names) {
    std::vector<std::string> distinct = raw;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    bool all_numeric = true;
    for (const std::string& s : distinct) {
        double v;
        if (!parse_double(s, v)) {
            all_numeric = false;
            break;
        }
    }
    if (all_numeric)
        std::sort(distinct.begin(), distinct.end(), [](const std::string& a, const std::string& b) {
            double va, vb;
            parse_double(a, va);
            parse_double(b, vb);
            return va != vb ? va < vb : a < b;
        });

    std::map<std::string, int> id;
    for (const std::string& s : distinct) id.emplace(s, static_cast<int>(id.size()));
    std::vector<int> labels(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) labels[i] = id.at(raw[i]);
    names = std::move(distinct);
    return labels;
}

CrispPartition labels_from_table(const CsvTable& table, const std::string& path,
                                 std::vector<std::string>* names_out = nullptr) {
    if (table.rows.front().size() != 1)
        throw ParseError(path + ": label file must have a single column, got " +
                         std::to_string(table.rows.front().size()));
    std::vector<std::string> raw(table.rows.size());
    for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = table.rows[i][0];
    std::vector<std::string> names;
    std::vector<int> labels = encode_labels(raw, names);
    if (names_out) *names_out = names;
    try {
        return CrispPartition(std::move(labels), static_cast<int>(names.size()));
    } catch (const std::invalid_argument& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::string column_name(const CsvTable& table, std::size_t j) {
    if (j < table.header.size() && !table.header[j].empty()) return table.header[j];
    return "col" + std::to_string(j + 1);
}

}  // namespace

FuzzyPartition read_membership_csv(const std::string& path, const CsvOptions& opts) {
    return membership_from_table(read_csv(path, opts), path, opts);
}

CrispPartition read_labels_csv(const std::string& path, const CsvOptions& opts) {
    return labels_from_table(read_csv(path, opts), path);
}

PartitionFile read_partition_file(const std::string& path, const CsvOptions& opts,
                                  PartitionFormat format) {
    const CsvTable table = read_csv(path, opts);
    if (format == PartitionFormat::automatic)
        format = table.rows.front().size() == 1 ? PartitionFormat::labels
                                                : PartitionFormat::membership;
    if (format == PartitionFormat::labels)
        return {from_labels(labels_from_table(table, path)), true};
    FuzzyPartition p = membership_from_table(table, path, opts);
    const bool crisp = p.is_one_hot();
    return {std::move(p), crisp};
}

namespace {

/// Indices of the columns where every cell is numeric.
std::vector<std::size_t> numeric_columns(const CsvTable& table,
                                         const std::vector<std::size_t>& candidates) {
    std::vector<std::size_t> numeric;
    for (std::size_t j : candidates) {
        bool ok = true;
        for (const auto& row : table.rows) {
            double v;
            if (!parse_double(row[j], v)) {
                ok = false;
                break;
            }
        }
        if (ok) numeric.push_back(j);
    }
    return numeric;
}

Dataset dataset_from_columns(const CsvTable& table, const std::string& path,
                             const std::vector<std::size_t>& cols) {
    Matrix m(table.rows.size(), cols.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            m(i, j) = cell_as_double(table, path, i, cols[j]);
    try {
        return Dataset(std::move(m));
    } catch (const std::invalid_argument& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace

LabeledDatasetFile read_labeled_dataset_csv(const std::string& path,
                                            const std::string& label_column,
                                            const CsvOptions& opts) {
    const CsvTable table = read_csv(path, opts);
    const std::size_t ncols = table.rows.front().size();

    std::size_t label_idx = ncols - 1;
    if (!label_column.empty()) {
        bool found = false;
        for (std::size_t j = 0; j < table.header.size(); ++j)
            if (table.header[j] == label_column) {
                label_idx = j;
                found = true;
                break;
            }
        if (!found) {
            char* end = nullptr;
            const long v = std::strtol(label_column.c_str(), &end, 10);
            if (end != label_column.c_str() + label_column.size() || v < 0 ||
                static_cast<std::size_t>(v) >= ncols)
                throw ParseError(path + ": no label column '" + label_column + "'");
            label_idx = static_cast<std::size_t>(v);
        }
    }

    std::vector<std::size_t> candidates;
    for (std::size_t j = 0; j < ncols; ++j)
        if (j != label_idx) candidates.push_back(j);
    const std::vector<std::size_t> numeric = numeric_columns(table, candidates);
    if (numeric.empty()) throw ParseError(path + ": no numeric features");

    std::vector<std::string> feature_names;
    for (std::size_t j : numeric) feature_names.push_back(column_name(table, j));
    std::vector<std::string> dropped;
    for (std::size_t j : candidates)
        if (std::find(numeric.begin(), numeric.end(), j) == numeric.end())
            dropped.push_back(column_name(table, j));

    std::vector<std::string> raw(table.rows.size());
    for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = table.rows[i][label_idx];
    std::vector<std::string> label_names;
    std::vector<int> labels = encode_labels(raw, label_names);

    Dataset data = dataset_from_columns(table, path, numeric);
    try {
        return {std::move(data),
                CrispPartition(std::move(labels), static_cast<int>(label_names.size())),
                std::move(feature_names), std::move(dropped), std::move(label_names)};
    } catch (const std::invalid_argument& e) {
        throw ParseError(path + ": " + e.what());
    }
}

Dataset read_dataset_csv(const std::string& path, const CsvOptions& opts,
                         std::vector<std::string>* dropped_columns) {
    const CsvTable table = read_csv(path, opts);
    std::vector<std::size_t> candidates(table.rows.front().size());
    for (std::size_t j = 0; j < candidates.size(); ++j) candidates[j] = j;
    const std::vector<std::size_t> numeric = numeric_columns(table, candidates);
    if (numeric.empty()) throw ParseError(path + ": no numeric features");
    if (dropped_columns) {
        dropped_columns->clear();
        for (std::size_t j : candidates)
            if (std::find(numeric.begin(), numeric.end(), j) == numeric.end())
                dropped_columns->push_back(column_name(table, j));
    }
    return dataset_from_columns(table, path, numeric);
}

void write_membership_csv(const std::string& path, const FuzzyPartition& partition,
                          const std::vector<std::string>& header) {
    if (!header.empty() && header.size() != partition.clusters())
        throw std::invalid_argument("header has " + std::to_string(header.size()) +
                                    " names for " + std::to_string(partition.clusters()) +
                                    " clusters");
    std::ostringstream out;
    if (!header.empty()) {
        for (std::size_t j = 0; j < header.size(); ++j)
            out << (j ? "," : "") << quoted_field(header[j]);
        out << '\n';
    }
    const Matrix& w = partition.memberships();
    for (std::size_t i = 0; i < w.rows(); ++i) {
        for (std::size_t j = 0; j < w.cols(); ++j) out << (j ? "," : "") << fmt17(w(i, j));
        out << '\n';
    }
    write_text_file(path, out.str());
}

void write_labels_csv(const std::string& path, const CrispPartition& labels) {
    std::ostringstream out;
    for (int label : labels.labels()) out << label << '\n';
    write_text_file(path, out.str());
}

namespace {

nlohmann::json report_json(const ComparisonResult& result, const ExpectationConfig& cfg,
                           const std::optional<std::map<std::string, double>>& crisp) {
    nlohmann::json j;
    j["version"] = version;
    j["n"] = result.n;
    j["m"] = result.m;
    j["ndc"] = result.ndc;
    j["expected_ndc"] = result.expected_ndc;
    j["aci"] = result.aci;
    j["aci_clamped"] = result.aci_clamped;
    j["degenerate_expectation"] = result.degenerate_expectation;
    j["cardinals"] = {{"a", result.cardinals.a},
                      {"b", result.cardinals.b},
                      {"c", result.cardinals.c},
                      {"d", result.cardinals.d}};
    j["indices"] = cardinal_indices(result.cardinals);
    j["config"] = {{"mode", to_string(result.expectation_mode)}, {"h", cfg.h}, {"seed", cfg.seed}};
    if (result.mc_std_error) j["mc_std_error"] = *result.mc_std_error;
    if (crisp) j["crisp_indices"] = *crisp;
    return j;
}

}  // namespace

std::string report_to_json(const ComparisonResult& result, const ExpectationConfig& cfg,
                           const std::optional<std::map<std::string, double>>& crisp) {
    return report_json(result, cfg, crisp).dump(2) + "\n";
}

std::string report_to_text(const ComparisonResult& result, const ExpectationConfig& cfg,
                           const std::optional<std::map<std::string, double>>& crisp) {
    std::ostringstream out;
    out << "objects:          " << result.n << '\n';
    out << "pairs:            " << result.m << '\n';
    out << "ndc:              " << fmt4(result.ndc) << '\n';
    out << "expected ndc:     " << fmt4(result.expected_ndc) << "  ("
        << to_string(result.expectation_mode);
    if (result.expectation_mode == ExpectationMode::monte_carlo)
        out << ", h=" << cfg.h << ", seed=" << cfg.seed;
    out << ")\n";
    if (result.mc_std_error) out << "mc std error:     " << fmt4(*result.mc_std_error) << '\n';
    out << "aci:              " << fmt4(result.aci) << '\n';
    out << "aci (clamped):    " << fmt4(result.aci_clamped) << '\n';
    if (result.degenerate_expectation)
        out << "note: expected ndc is 1 within tolerance; aci reported as 0\n";
    out << "cardinals:        a=" << fmt4(result.cardinals.a) << " b=" << fmt4(result.cardinals.b)
        << " c=" << fmt4(result.cardinals.c) << " d=" << fmt4(result.cardinals.d) << '\n';
    out << "indices:\n";
    for (const auto& [name, value] : cardinal_indices(result.cardinals))
        out << "  " << name << std::string(name.size() < 18 ? 18 - name.size() : 1, ' ')
            << fmt4(value) << '\n';
    if (crisp) {
        out << "crisp indices:\n";
        for (const auto& [name, value] : *crisp)
            out << "  " << name << std::string(name.size() < 18 ? 18 - name.size() : 1, ' ')
                << fmt4(value) << '\n';
    }
    return out.str();
}

std::string study_rows_to_csv(const StudyResult& result) {
    std::ostringstream out;
    out << "design,index,value\n";
    for (const StudyRow& row : result.rows)
        out << quoted_field(row.design) << ',' << quoted_field(row.index) << ','
            << fmt17(row.value) << '\n';
    return out.str();
}

std::string matrix_to_csv(const NamedMatrix& matrix) {
    std::ostringstream out;
    out << quoted_field(matrix.name);
    for (const std::string& c : matrix.col_labels) out << ',' << quoted_field(c);
    out << '\n';
    for (std::size_t i = 0; i < matrix.values.rows(); ++i) {
        out << quoted_field(i < matrix.row_labels.size() ? matrix.row_labels[i] : "");
        for (std::size_t j = 0; j < matrix.values.cols(); ++j)
            out << ',' << fmt17(matrix.values(i, j));
        out << '\n';
    }
    return out.str();
}

std::string study_metadata_to_json(const StudyResult& result) {
    nlohmann::json j;
    j["version"] = version;
    j["study"] = result.study;
    j["metadata"] = result.metadata;
    return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError(path + ": cannot write");
    out << content;
    out.flush();
    if (!out) throw ParseError(path + ": write failed");
}

}  // namespace concord
