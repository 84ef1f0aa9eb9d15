#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "vform/engine.hpp"

namespace vform {

// shortest round-trip decimal form; parsing it back yields the same bits,
// and equal doubles always print identically
std::string formatDouble(double v);

struct CsvError : std::runtime_error {
    int line;
    CsvError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what),
          line(line) {}
};

void writeSnapshotCsv(std::ostream& os, const std::vector<Snapshot>& trace);

// throws CsvError on malformed input, naming the offending line
std::vector<Snapshot> readSnapshotCsv(std::istream& is);

}  // namespace vform
