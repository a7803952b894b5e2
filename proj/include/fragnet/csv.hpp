#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fragnet/network.hpp"

namespace fragnet {

// One CSV row; `year` is present only when the input has a year column.
struct EdgeRow {
    std::optional<int> year;
    CreditRecord record;
};

// Reads an edge-list CSV with header `bank_id,firm_id,amount` and an
// optional `year` column (any column order). Lines starting with '#' and
// blank lines are skipped. Fields must not contain embedded commas.
std::vector<EdgeRow> read_edge_csv(std::istream& in);
std::vector<EdgeRow> read_edge_csv_file(const std::string& path);

// Bank alias table `old_id,new_id,effective_year` for merger chains.
struct BankAlias {
    std::string old_id;
    std::string new_id;
    int effective_year = 0;
};

std::vector<BankAlias> read_alias_csv(std::istream& in);
std::vector<BankAlias> read_alias_csv_file(const std::string& path);

// Rewrites bank ids in place: for each row with a year, aliases whose
// effective_year <= year are applied, following chains to a fixpoint.
void apply_aliases(std::vector<EdgeRow>& rows,
                   const std::vector<BankAlias>& aliases);

}  // namespace fragnet
