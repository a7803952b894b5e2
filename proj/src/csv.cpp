#include "fragnet/csv.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "fragnet/error.hpp"

namespace fragnet {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(trim(field));
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

double parse_amount(const std::string& s, int line_no) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
        throw Error(ErrorKind::invalid_record,
                    "line " + std::to_string(line_no) +
                        ": cannot parse amount '" + s + "'");
    }
    return v;
}

int parse_year(const std::string& s, int line_no) {
    char* end = nullptr;
    long v = std::strtol(s.c_str(), &end, 10);
    if (s.empty() || end != s.c_str() + s.size()) {
        throw Error(ErrorKind::invalid_record,
                    "line " + std::to_string(line_no) +
                        ": cannot parse year '" + s + "'");
    }
    return static_cast<int>(v);
}

// Returns column index of `name` in the header, or -1.
int find_column(const std::vector<std::string>& header, const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : static_cast<int>(it - header.begin());
}

}  // namespace

std::vector<EdgeRow> read_edge_csv(std::istream& in) {
    std::string line;
    int line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        header = split_fields(t);
        break;
    }
    if (header.empty()) {
        throw Error(ErrorKind::empty_input, "empty edge-list CSV");
    }
    const int c_bank = find_column(header, "bank_id");
    const int c_firm = find_column(header, "firm_id");
    const int c_amount = find_column(header, "amount");
    const int c_year = find_column(header, "year");
    if (c_bank < 0 || c_firm < 0 || c_amount < 0) {
        throw Error(ErrorKind::invalid_record,
                    "edge-list header must contain bank_id, firm_id, amount");
    }
    const std::size_t width = header.size();

    std::vector<EdgeRow> rows;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto fields = split_fields(t);
        if (fields.size() != width) {
            throw Error(ErrorKind::invalid_record,
                        "line " + std::to_string(line_no) + ": expected " +
                            std::to_string(width) + " fields, got " +
                            std::to_string(fields.size()));
        }
        EdgeRow row;
        row.record.bank_id = fields[static_cast<std::size_t>(c_bank)];
        row.record.firm_id = fields[static_cast<std::size_t>(c_firm)];
        row.record.amount =
            parse_amount(fields[static_cast<std::size_t>(c_amount)], line_no);
        if (c_year >= 0) {
            row.year = parse_year(fields[static_cast<std::size_t>(c_year)], line_no);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw Error(ErrorKind::empty_input, "edge-list CSV has no data rows");
    }
    return rows;
}

std::vector<EdgeRow> read_edge_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::io, "cannot open input file: " + path);
    }
    return read_edge_csv(in);
}

std::vector<BankAlias> read_alias_csv(std::istream& in) {
    std::string line;
    int line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        header = split_fields(t);
        break;
    }
    const int c_old = header.empty() ? -1 : find_column(header, "old_id");
    const int c_new = header.empty() ? -1 : find_column(header, "new_id");
    const int c_year = header.empty() ? -1 : find_column(header, "effective_year");
    if (c_old < 0 || c_new < 0 || c_year < 0) {
        throw Error(ErrorKind::invalid_record,
                    "alias header must contain old_id, new_id, effective_year");
    }
    std::vector<BankAlias> aliases;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto fields = split_fields(t);
        if (fields.size() != header.size()) {
            throw Error(ErrorKind::invalid_record,
                        "alias line " + std::to_string(line_no) +
                            ": wrong field count");
        }
        BankAlias a;
        a.old_id = fields[static_cast<std::size_t>(c_old)];
        a.new_id = fields[static_cast<std::size_t>(c_new)];
        a.effective_year = parse_year(fields[static_cast<std::size_t>(c_year)], line_no);
        if (a.old_id.empty() || a.new_id.empty()) {
            throw Error(ErrorKind::invalid_record,
                        "alias line " + std::to_string(line_no) + ": empty id");
        }
        aliases.push_back(std::move(a));
    }
    return aliases;
}

std::vector<BankAlias> read_alias_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::io, "cannot open alias file: " + path);
    }
    return read_alias_csv(in);
}

void apply_aliases(std::vector<EdgeRow>& rows,
                   const std::vector<BankAlias>& aliases) {
    if (aliases.empty()) return;
    std::map<std::string, const BankAlias*> by_old;
    for (const auto& a : aliases) by_old[a.old_id] = &a;

    for (auto& row : rows) {
        if (!row.year) continue;
        int hops = 0;
        for (;;) {
            auto it = by_old.find(row.record.bank_id);
            if (it == by_old.end() || it->second->effective_year > *row.year) break;
            if (++hops > 32) {
                throw Error(ErrorKind::invalid_record,
                            "alias chain too long or cyclic at '" +
                                row.record.bank_id + "'");
            }
            row.record.bank_id = it->second->new_id;
        }
    }
}

}  // namespace fragnet
