#include "data_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "errors.hpp"
#include "rng.hpp"

namespace svtail {

namespace {

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) {
        ++begin;
    }
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) {
        --end;
    }
    return s.substr(begin, end - begin);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool starts_with_ci(const std::string& s, const std::string& prefix) {
    if (s.size() < prefix.size()) {
        return false;
    }
    return lower(s.substr(0, prefix.size())) == lower(prefix);
}

double parse_double(const std::string& token, std::size_t line) {
    std::string t = trim(token);
    if (t == "?") {
        throw ParseError("missing values ('?') are not supported", line);
    }
    if (t.empty()) {
        throw ParseError("empty value", line);
    }
    double value = 0.0;
    const char* begin = t.data();
    const char* end = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw ParseError("not a numeric value: '" + t + "'", line);
    }
    if (!std::isfinite(value)) {
        throw ParseError("non-finite value: '" + t + "'", line);
    }
    return value;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

// Reads a possibly quoted attribute name starting at s[pos]; advances pos
// past the name.
std::string read_name(const std::string& s, std::size_t& pos, std::size_t line) {
    if (pos >= s.size()) {
        throw ParseError("expected an attribute name", line);
    }
    char quote = s[pos];
    if (quote == '\'' || quote == '"') {
        std::size_t close = s.find(quote, pos + 1);
        if (close == std::string::npos) {
            throw ParseError("unterminated quoted name", line);
        }
        std::string name = s.substr(pos + 1, close - pos - 1);
        pos = close + 1;
        return name;
    }
    std::size_t end = pos;
    while (end < s.size() && !std::isspace(static_cast<unsigned char>(s[end]))) {
        ++end;
    }
    std::string name = s.substr(pos, end - pos);
    pos = end;
    return name;
}

struct Attribute {
    std::string name;
    bool binary_nominal = false;
};

// Parses "@attribute <name> <type>" after the directive has been matched.
Attribute parse_attribute(const std::string& rest, std::size_t line) {
    std::size_t pos = 0;
    while (pos < rest.size() && std::isspace(static_cast<unsigned char>(rest[pos]))) {
        ++pos;
    }
    Attribute attr;
    attr.name = read_name(rest, pos, line);
    if (attr.name.empty()) {
        throw ParseError("empty attribute name", line);
    }
    std::string type = trim(rest.substr(pos));
    if (type.empty()) {
        throw ParseError("attribute '" + attr.name + "' has no type", line);
    }
    std::string type_l = lower(type);
    if (type_l == "numeric" || type_l == "real" || type_l == "integer") {
        return attr;
    }
    if (type[0] == '{') {
        if (type.back() != '}') {
            throw ParseError("unterminated nominal specification", line);
        }
        std::vector<std::string> values = split(type.substr(1, type.size() - 2), ',');
        std::set<std::string> distinct;
        for (const std::string& v : values) {
            distinct.insert(trim(v));
        }
        if (distinct == std::set<std::string>{"0", "1"}) {
            attr.binary_nominal = true;
            return attr;
        }
        throw ParseError("only {0,1} nominal attributes are supported, got " + type,
                         line);
    }
    throw ParseError("unsupported attribute type '" + type + "'", line);
}

// Extracts the label names from a label-list XML file: every
// <label name="..."> entry, in order of appearance.
std::vector<std::string> parse_label_xml(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open label XML file: " + path);
    }
    std::vector<std::string> names;
    std::string file_line;
    std::size_t line_no = 0;
    while (std::getline(in, file_line)) {
        ++line_no;
        std::size_t pos = 0;
        while ((pos = file_line.find("<label", pos)) != std::string::npos) {
            std::size_t after = pos + 6;
            if (after < file_line.size() && file_line[after] != ' ' &&
                file_line[after] != '\t' && file_line[after] != '>' &&
                file_line[after] != '/') {
                // A longer tag name, e.g. the <labels> container.
                pos = after;
                continue;
            }
            std::size_t tag_end = file_line.find('>', pos);
            std::size_t limit =
                tag_end == std::string::npos ? file_line.size() : tag_end;
            std::size_t name_pos = file_line.find("name", pos);
            if (name_pos == std::string::npos || name_pos > limit) {
                throw ParseError("<label> without a name attribute", line_no);
            }
            std::size_t eq = file_line.find('=', name_pos);
            if (eq == std::string::npos) {
                throw ParseError("malformed name attribute", line_no);
            }
            std::size_t open = eq + 1;
            while (open < file_line.size() &&
                   std::isspace(static_cast<unsigned char>(file_line[open]))) {
                ++open;
            }
            if (open >= file_line.size() ||
                (file_line[open] != '"' && file_line[open] != '\'')) {
                throw ParseError("label name must be quoted", line_no);
            }
            char quote = file_line[open];
            std::size_t close = file_line.find(quote, open + 1);
            if (close == std::string::npos) {
                throw ParseError("unterminated label name", line_no);
            }
            names.push_back(file_line.substr(open + 1, close - open - 1));
            pos = close + 1;
        }
    }
    if (names.empty()) {
        throw ParseError("label XML file contains no <label> entries", 1);
    }
    return names;
}

} // namespace

MultiLabelDataset load_arff(const std::string& path, std::size_t label_count,
                            bool labels_at_end, const std::string& xml_label_path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open ARFF file: " + path);
    }

    std::vector<Attribute> attributes;
    std::unordered_set<std::string> seen_names;
    std::vector<std::vector<double>> rows;
    std::vector<std::size_t> row_lines;
    bool in_data = false;
    std::string file_line;
    std::size_t line_no = 0;

    while (std::getline(in, file_line)) {
        ++line_no;
        std::string line = trim(file_line);
        if (line.empty() || line[0] == '%') {
            continue;
        }
        if (!in_data) {
            if (starts_with_ci(line, "@relation")) {
                continue;
            }
            if (starts_with_ci(line, "@attribute")) {
                Attribute attr = parse_attribute(line.substr(10), line_no);
                if (!seen_names.insert(attr.name).second) {
                    throw ParseError("duplicate attribute name '" + attr.name + "'",
                                     line_no);
                }
                attributes.push_back(std::move(attr));
                continue;
            }
            if (starts_with_ci(line, "@data")) {
                if (attributes.empty()) {
                    throw ParseError("@data before any @attribute", line_no);
                }
                in_data = true;
                continue;
            }
            throw ParseError("unrecognized header line: '" + line + "'", line_no);
        }

        const std::size_t width = attributes.size();
        std::vector<double> row(width, 0.0);
        if (line[0] == '{') {
            if (line.back() != '}') {
                throw ParseError("unterminated sparse row", line_no);
            }
            std::string body = trim(line.substr(1, line.size() - 2));
            if (!body.empty()) {
                std::vector<bool> assigned(width, false);
                for (const std::string& entry : split(body, ',')) {
                    std::istringstream pair_stream(trim(entry));
                    std::string idx_token;
                    std::string value_token;
                    if (!(pair_stream >> idx_token >> value_token) ||
                        (pair_stream >> std::ws, !pair_stream.eof())) {
                        throw ParseError("sparse entry must be 'index value': '" +
                                             trim(entry) + "'",
                                         line_no);
                    }
                    double idx_value = parse_double(idx_token, line_no);
                    auto idx = static_cast<std::size_t>(idx_value);
                    if (idx_value != static_cast<double>(idx) || idx >= width) {
                        throw ParseError("sparse index out of range: " + idx_token,
                                         line_no);
                    }
                    if (assigned[idx]) {
                        throw ParseError("duplicate sparse index " + idx_token, line_no);
                    }
                    assigned[idx] = true;
                    row[idx] = parse_double(value_token, line_no);
                }
            }
        } else {
            std::vector<std::string> tokens = split(line, ',');
            if (tokens.size() != width) {
                throw ParseError("expected " + std::to_string(width) + " values, got " +
                                     std::to_string(tokens.size()),
                                 line_no);
            }
            for (std::size_t j = 0; j < width; ++j) {
                row[j] = parse_double(tokens[j], line_no);
            }
        }
        for (std::size_t j = 0; j < width; ++j) {
            if (attributes[j].binary_nominal && row[j] != 0.0 && row[j] != 1.0) {
                throw ParseError("attribute '" + attributes[j].name +
                                     "' only admits 0 or 1",
                                 line_no);
            }
        }
        rows.push_back(std::move(row));
        row_lines.push_back(line_no);
    }

    if (!in_data) {
        throw ParseError("no @data section", line_no == 0 ? 1 : line_no);
    }
    if (rows.empty()) {
        throw ParseError("no data rows", line_no);
    }

    const std::size_t width = attributes.size();
    std::vector<bool> is_label(width, false);
    if (!xml_label_path.empty()) {
        std::vector<std::string> xml_names = parse_label_xml(xml_label_path);
        if (label_count != 0 && label_count != xml_names.size()) {
            throw UsageError("label_count " + std::to_string(label_count) +
                             " conflicts with the XML label list of size " +
                             std::to_string(xml_names.size()));
        }
        std::unordered_map<std::string, std::size_t> index_of;
        for (std::size_t j = 0; j < width; ++j) {
            index_of.emplace(attributes[j].name, j);
        }
        for (const std::string& name : xml_names) {
            auto it = index_of.find(name);
            if (it == index_of.end()) {
                throw UsageError("label '" + name +
                                 "' from the XML list is not an attribute of " + path);
            }
            is_label[it->second] = true;
        }
        label_count = xml_names.size();
    } else {
        if (label_count < 1) {
            throw UsageError("label_count must be at least 1");
        }
        if (label_count >= width) {
            throw UsageError("label_count " + std::to_string(label_count) +
                             " leaves no feature attributes (file has " +
                             std::to_string(width) + ")");
        }
        for (std::size_t j = 0; j < label_count; ++j) {
            is_label[labels_at_end ? width - 1 - j : j] = true;
        }
    }

    const std::size_t n = rows.size();
    const std::size_t l = label_count;
    const std::size_t d = width - l;
    if (d == 0) {
        throw UsageError("dataset has no feature attributes");
    }

    MultiLabelDataset ds{DenseMatrix(n, d), DenseMatrix(n, l), {}, {}};
    for (std::size_t j = 0; j < width; ++j) {
        (is_label[j] ? ds.label_names : ds.feature_names).push_back(attributes[j].name);
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t fj = 0;
        std::size_t lj = 0;
        for (std::size_t j = 0; j < width; ++j) {
            if (is_label[j]) {
                double v = rows[i][j];
                if (v != 0.0 && v != 1.0) {
                    throw ParseError("label '" + attributes[j].name +
                                         "' has non-binary value",
                                     row_lines[i]);
                }
                ds.labels(i, lj++) = v;
            } else {
                ds.features(i, fj++) = rows[i][j];
            }
        }
    }
    return ds;
}

namespace {

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

void save_arff(const MultiLabelDataset& ds, const std::string& path,
               const std::string& relation) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write ARFF file: " + path);
    }
    out << "@relation " << relation << "\n";
    for (const std::string& name : ds.feature_names) {
        out << "@attribute " << name << " numeric\n";
    }
    for (const std::string& name : ds.label_names) {
        out << "@attribute " << name << " {0,1}\n";
    }
    out << "@data\n";
    for (std::size_t i = 0; i < ds.features.rows(); ++i) {
        for (std::size_t j = 0; j < ds.features.cols(); ++j) {
            if (j > 0) {
                out << ",";
            }
            out << format_value(ds.features(i, j));
        }
        for (std::size_t j = 0; j < ds.labels.cols(); ++j) {
            out << "," << (ds.labels(i, j) == 1.0 ? "1" : "0");
        }
        out << "\n";
    }
    if (!out) {
        throw IoError("write failed: " + path);
    }
}

MultiLabelDataset merge(const MultiLabelDataset& a, const MultiLabelDataset& b) {
    if (a.feature_names != b.feature_names || a.label_names != b.label_names) {
        throw UsageError("cannot merge datasets with different attributes");
    }
    const std::size_t n = a.features.rows() + b.features.rows();
    MultiLabelDataset out{DenseMatrix(n, a.features.cols()),
                          DenseMatrix(n, a.labels.cols()), a.feature_names,
                          a.label_names};
    for (std::size_t i = 0; i < a.features.rows(); ++i) {
        for (std::size_t j = 0; j < a.features.cols(); ++j) {
            out.features(i, j) = a.features(i, j);
        }
        for (std::size_t j = 0; j < a.labels.cols(); ++j) {
            out.labels(i, j) = a.labels(i, j);
        }
    }
    const std::size_t offset = a.features.rows();
    for (std::size_t i = 0; i < b.features.rows(); ++i) {
        for (std::size_t j = 0; j < b.features.cols(); ++j) {
            out.features(offset + i, j) = b.features(i, j);
        }
        for (std::size_t j = 0; j < b.labels.cols(); ++j) {
            out.labels(offset + i, j) = b.labels(i, j);
        }
    }
    return out;
}

DatasetStats stats(const MultiLabelDataset& ds) {
    DatasetStats st;
    st.n = ds.labels.rows();
    st.d = ds.features.cols();
    st.l = ds.labels.cols();
    double total = 0.0;
    std::set<std::vector<double>> label_rows;
    for (std::size_t i = 0; i < st.n; ++i) {
        std::vector<double> row(st.l);
        for (std::size_t j = 0; j < st.l; ++j) {
            row[j] = ds.labels(i, j);
            total += ds.labels(i, j);
        }
        label_rows.insert(std::move(row));
    }
    st.cardinality = total / static_cast<double>(st.n);
    st.density = st.cardinality / static_cast<double>(st.l);
    st.distinct = label_rows.size();
    return st;
}

std::pair<MultiLabelDataset, DenseMatrix> synth_low_rank(std::size_t n, std::size_t d,
                                                         std::size_t l, std::size_t rank,
                                                         double noise,
                                                         std::uint64_t seed) {
    if (rank < 1 || rank > std::min(d, l)) {
        throw UsageError("rank must lie in [1, min(d, l)]");
    }
    if (!std::isfinite(noise) || noise < 0.0) {
        throw UsageError("noise must be finite and non-negative");
    }
    Rng rng(seed);
    auto fill_normal = [&rng](DenseMatrix& m) {
        for (std::size_t i = 0; i < m.rows(); ++i) {
            for (std::size_t j = 0; j < m.cols(); ++j) {
                m(i, j) = rng.normal();
            }
        }
    };

    DenseMatrix x(n, d);
    fill_normal(x);
    DenseMatrix a(d, rank);
    fill_normal(a);
    DenseMatrix b(l, rank);
    fill_normal(b);
    DenseMatrix w_star = multiply(a, transpose(b));

    DenseMatrix scores = multiply(x, w_star);
    if (noise > 0.0) {
        DenseMatrix e(n, l);
        fill_normal(e);
        scores = add(scores, scale(e, noise));
    }

    MultiLabelDataset ds{std::move(x), DenseMatrix(n, l), {}, {}};
    std::vector<double> sorted(l);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < l; ++j) {
            sorted[j] = scores(i, j);
        }
        std::sort(sorted.begin(), sorted.end());
        double median = (l % 2 == 1)
                            ? sorted[l / 2]
                            : 0.5 * (sorted[l / 2 - 1] + sorted[l / 2]);
        for (std::size_t j = 0; j < l; ++j) {
            ds.labels(i, j) = scores(i, j) >= median ? 1.0 : 0.0;
        }
    }
    for (std::size_t j = 0; j < d; ++j) {
        ds.feature_names.push_back("f" + std::to_string(j));
    }
    for (std::size_t j = 0; j < l; ++j) {
        ds.label_names.push_back("y" + std::to_string(j));
    }
    return {std::move(ds), std::move(w_star)};
}

void save_model(const DenseMatrix& w, const std::string& path,
                const std::vector<std::string>& comments) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write model file: " + path);
    }
    for (const std::string& comment : comments) {
        out << "# " << comment << "\n";
    }
    out << w.rows() << " " << w.cols() << "\n";
    for (std::size_t i = 0; i < w.rows(); ++i) {
        for (std::size_t j = 0; j < w.cols(); ++j) {
            if (j > 0) {
                out << " ";
            }
            out << format_value(w(i, j));
        }
        out << "\n";
    }
    if (!out) {
        throw IoError("write failed: " + path);
    }
}

DenseMatrix load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open model file: " + path);
    }
    std::string file_line;
    std::size_t line_no = 0;

    auto next_content_line = [&]() -> bool {
        while (std::getline(in, file_line)) {
            ++line_no;
            std::string trimmed = trim(file_line);
            if (trimmed.empty() || trimmed[0] == '#') {
                continue;
            }
            file_line = trimmed;
            return true;
        }
        return false;
    };

    if (!next_content_line()) {
        throw ParseError("missing model header", line_no == 0 ? 1 : line_no);
    }
    std::istringstream header(file_line);
    long long rows = 0;
    long long cols = 0;
    if (!(header >> rows >> cols) || (header >> std::ws, !header.eof()) || rows < 1 ||
        cols < 1) {
        throw ParseError("model header must be '<rows> <cols>'", line_no);
    }

    DenseMatrix w(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    for (std::size_t i = 0; i < w.rows(); ++i) {
        if (!next_content_line()) {
            throw ParseError("model file ends after " + std::to_string(i) + " of " +
                                 std::to_string(w.rows()) + " rows",
                             line_no);
        }
        std::istringstream row_stream(file_line);
        std::string token;
        for (std::size_t j = 0; j < w.cols(); ++j) {
            if (!(row_stream >> token)) {
                throw ParseError("row has fewer than " + std::to_string(w.cols()) +
                                     " values",
                                 line_no);
            }
            w(i, j) = parse_double(token, line_no);
        }
        if (row_stream >> token) {
            throw ParseError("row has more than " + std::to_string(w.cols()) + " values",
                             line_no);
        }
    }
    if (next_content_line()) {
        throw ParseError("unexpected content after the last model row", line_no);
    }
    return w;
}

} // namespace svtail
