#ifndef CONCORD_IO_HPP
#define CONCORD_IO_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "concord/clustering.hpp"
#include "concord/fuzzy_concordance.hpp"
#include "concord/partition.hpp"
#include "concord/simulation.hpp"

namespace concord {

/// CSV/structure failure; messages carry row/column coordinates (1-based).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class HeaderMode { automatic, yes, no };

struct CsvOptions {
    char delimiter = ',';
    HeaderMode header = HeaderMode::automatic;
    bool renormalize = false;  // membership rows: rescale instead of reject
};

/// Membership matrix from CSV; rows are validated as a FuzzyPartition.
FuzzyPartition read_membership_csv(const std::string& path, const CsvOptions& opts = {});

/// Single-column label file, integer or string labels. String labels map to
/// 0..K-1 in sorted order.
CrispPartition read_labels_csv(const std::string& path, const CsvOptions& opts = {});

/// Either kind of partition file.
struct PartitionFile {
    FuzzyPartition partition;
    bool crisp = false;  // loaded from labels, or one-hot membership rows
};

enum class PartitionFormat { automatic, membership, labels };

/// Loads a partition file; a one-column integer (or string) file is read as
/// labels, anything else as a membership matrix, unless format says
/// otherwise.
PartitionFile read_partition_file(const std::string& path, const CsvOptions& opts = {},
                                  PartitionFormat format = PartitionFormat::automatic);

/// Labeled numeric data set: feature columns plus one label column.
/// Non-numeric feature columns are dropped and listed in dropped_columns.
struct LabeledDatasetFile {
    Dataset data;
    CrispPartition labels;
    std::vector<std::string> feature_names;
    std::vector<std::string> dropped_columns;
    std::vector<std::string> label_names;  // distinct labels in sorted order
};

/// label_column: name (requires a header) or 0-based index; empty selects the
/// last column.
LabeledDatasetFile read_labeled_dataset_csv(const std::string& path,
                                            const std::string& label_column = "",
                                            const CsvOptions& opts = {});

/// Numeric-only data set (no label column); non-numeric columns are dropped.
Dataset read_dataset_csv(const std::string& path, const CsvOptions& opts = {},
                         std::vector<std::string>* dropped_columns = nullptr);

/// Memberships with 17 significant digits, lossless on read-back.
void write_membership_csv(const std::string& path, const FuzzyPartition& partition,
                          const std::vector<std::string>& header = {});

void write_labels_csv(const std::string& path, const CrispPartition& labels);

/// Flat JSON report of one comparison; embeds tool version and the full
/// expectation config so the run can be repeated exactly.
std::string report_to_json(const ComparisonResult& result, const ExpectationConfig& cfg,
                           const std::optional<std::map<std::string, double>>& crisp = {});

/// Human-readable report, values at 4 decimals.
std::string report_to_text(const ComparisonResult& result, const ExpectationConfig& cfg,
                           const std::optional<std::map<std::string, double>>& crisp = {});

/// Study tables as CSV: long-form rows or one file per named matrix.
std::string study_rows_to_csv(const StudyResult& result);
std::string matrix_to_csv(const NamedMatrix& matrix);
std::string study_metadata_to_json(const StudyResult& result);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace concord

#endif
