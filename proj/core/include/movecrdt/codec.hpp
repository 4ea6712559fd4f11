#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "movecrdt/op.hpp"
#include "movecrdt/opset.hpp"

namespace movecrdt {

/// Canonical single-line JSON encoding of one operation. Field order is
/// fixed (id, type, obj, key, val, pred, mov, ins); optional fields are
/// omitted, ins only appears when true. Byte equality implies operation
/// equality.
std::string encode_op(const Operation& op);

/// Inverse of encode_op. Accepts any field order but rejects unknown fields
/// and structurally invalid records with MalformedRecord.
Operation decode_op(const std::string& line);

/// Line-delimited op log files.
std::vector<Operation> read_log(std::istream& in);
std::vector<Operation> read_log_file(const std::string& path);
void write_log(std::ostream& out, const std::vector<Operation>& ops);
void write_log_file(const std::string& path, const OpSet& set);

}  // namespace movecrdt
