#pragma once

#include <string>
#include <vector>

#include "primpair/criteria.hpp"
#include "primpair/intnum.hpp"
#include "primpair/verify.hpp"

namespace primpair::report {

enum class Format { text, csv, json };

// accepts "text", "csv", "json"
Format parse_format(const std::string& name);

std::string emit_factorization(const intnum::Factorization& f, Format fmt);
std::string emit_bound(const criteria::ConditionReport& r, Format fmt);
std::string emit_sieve(const criteria::SievePlan& p, Format fmt);
std::string emit_table(const std::vector<criteria::TableRow>& rows, Format fmt);
std::string emit_classify(const verify::ClassifyResult& r, Format fmt);
std::string emit_pair(const verify::PairReport& r, Format fmt);
std::string emit_charsum(const verify::CharsumSuite& s, Format fmt);

}  // namespace primpair::report
