#include "assign.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "error.hpp"

namespace divscope {

const char* to_string(AssignStatus s) {
    switch (s) {
        case AssignStatus::assigned: return "Assigned";
        case AssignStatus::ambiguous: return "Ambiguous";
        case AssignStatus::unknown: return "Unknown";
    }
    return "Unknown";
}

long gap_threshold(double gap, std::size_t len_q, std::size_t len_r) {
    if (!(gap > 0.0) || gap > 1.0)
        throw Error(errc::bad_gap, "gap must lie in (0, 1]");
    const double shorter = static_cast<double>(std::min(len_q, len_r));
    // the 1e-9 guard keeps exact products like 0.1 * 50 from flooring to 4
    return static_cast<long>(std::floor((1.0 - gap) * shorter + 1e-9));
}

std::vector<AssignmentResult> classify(const ReadSet& queries,
                                       const ReferenceDB& refs,
                                       const DistanceMatrix& cross,
                                       double gap) {
    if (cross.rows != queries.size() || cross.cols != refs.reads.size())
        throw Error(errc::shape_mismatch,
                    "cross matrix shape does not match query/reference counts");
    if (refs.species.size() != refs.reads.size())
        throw Error(errc::shape_mismatch, "reference label count mismatch");
    if (!(gap > 0.0) || gap > 1.0)
        throw Error(errc::bad_gap, "gap must lie in (0, 1]");

    std::vector<AssignmentResult> out;
    out.reserve(queries.size());
    for (std::size_t i = 0; i < queries.size(); ++i) {
        AssignmentResult r;
        r.read_id = queries[i].id;
        std::set<std::string> matched;
        const std::size_t qlen = queries[i].length();
        for (std::size_t j = 0; j < refs.reads.size(); ++j) {
            const long theta = gap_threshold(gap, qlen, refs.reads[j].length());
            if (cross.at(i, j) <= static_cast<double>(theta)) {
                ++r.support;
                matched.insert(refs.species[j]);
            }
        }
        r.matched_species.assign(matched.begin(), matched.end());
        if (r.support == 0)
            r.status = AssignStatus::unknown;
        else if (matched.size() == 1) {
            r.status = AssignStatus::assigned;
            r.species = *matched.begin();
        } else
            r.status = AssignStatus::ambiguous;
        out.push_back(std::move(r));
    }
    return out;
}

std::map<std::string, std::string> read_labels_tsv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(errc::io_error, "cannot open " + path);
    std::map<std::string, std::string> labels;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 == line.size())
            throw Error(errc::bad_format, path + ": expected ref_id<TAB>species on line " +
                                              std::to_string(lineno));
        std::string id = line.substr(0, tab);
        std::string species = line.substr(tab + 1);
        auto [it, inserted] = labels.emplace(std::move(id), std::move(species));
        if (!inserted)
            throw Error(errc::duplicate_id,
                        path + ": duplicate label for '" + it->first + "'");
    }
    if (labels.empty()) throw Error(errc::empty_input, path + ": no labels");
    return labels;
}

ReferenceDB make_reference_db(ReadSet reads,
                              const std::map<std::string, std::string>& labels) {
    ReferenceDB db;
    db.species.reserve(reads.size());
    for (const Read& r : reads.reads) {
        auto it = labels.find(r.id);
        if (it == labels.end())
            throw Error(errc::missing_label,
                        "reference '" + r.id + "' has no species label");
        db.species.push_back(it->second);
    }
    db.reads = std::move(reads);
    return db;
}

void write_assignments_tsv(const std::vector<AssignmentResult>& rows,
                           const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(errc::io_error, "cannot open " + path + " for writing");
    out << "read_id\tstatus\tspecies\tsupport\n";
    for (const auto& r : rows) {
        out << r.read_id << '\t' << to_string(r.status) << '\t'
            << (r.species.empty() ? "-" : r.species) << '\t' << r.support
            << '\n';
    }
    if (!out.flush()) throw Error(errc::io_error, "failed writing " + path);
}

std::vector<AssignmentResult> read_assignments_tsv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(errc::io_error, "cannot open " + path);
    std::string line;
    if (!std::getline(in, line))
        throw Error(errc::bad_format, path + ": empty assignment table");
    std::vector<AssignmentResult> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream row(line);
        AssignmentResult r;
        std::string status, species, support;
        if (!std::getline(row, r.read_id, '\t') || !std::getline(row, status, '\t') ||
            !std::getline(row, species, '\t') || !std::getline(row, support, '\t'))
            throw Error(errc::bad_format,
                        path + ": short row on line " + std::to_string(lineno));
        if (status == "Assigned")
            r.status = AssignStatus::assigned;
        else if (status == "Ambiguous")
            r.status = AssignStatus::ambiguous;
        else if (status == "Unknown")
            r.status = AssignStatus::unknown;
        else
            throw Error(errc::bad_format, path + ": unknown status '" + status +
                                              "' on line " + std::to_string(lineno));
        if (species != "-") r.species = species;
        r.support = std::stoull(support);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<std::string> color_table(
    const std::vector<std::string>& embedding_ids,
    const std::vector<AssignmentResult>& rows) {
    if (rows.size() != embedding_ids.size())
        throw Error(errc::join_error,
                    "assignment rows (" + std::to_string(rows.size()) +
                        ") do not match embedding rows (" +
                        std::to_string(embedding_ids.size()) + ")");
    std::vector<std::string> out;
    out.reserve(embedding_ids.size());
    for (std::size_t i = 0; i < embedding_ids.size(); ++i) {
        if (rows[i].read_id != embedding_ids[i])
            throw Error(errc::join_error, "embedding id '" + embedding_ids[i] +
                                              "' does not line up with "
                                              "assignment '" +
                                              rows[i].read_id + "'");
        switch (rows[i].status) {
            case AssignStatus::assigned: out.push_back(rows[i].species); break;
            case AssignStatus::ambiguous: out.push_back("__ambiguous__"); break;
            case AssignStatus::unknown: out.push_back("__unknown__"); break;
        }
    }
    return out;
}

}  // namespace divscope
