#include "vform/csvio.hpp"

#include <charconv>
#include <istream>
#include <ostream>

namespace vform {

std::string formatDouble(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void writeSnapshotCsv(std::ostream& os, const std::vector<Snapshot>& trace) {
    os << "step,bird_id,x,y\n";
    for (const Snapshot& s : trace)
        for (const BirdPose& b : s.birds)
            os << s.step << ',' << b.id << ',' << formatDouble(b.x) << ','
               << formatDouble(b.y) << '\n';
}

namespace {

bool splitFields(const std::string& line, std::string out[4]) {
    std::size_t start = 0;
    for (int f = 0; f < 4; ++f) {
        const std::size_t comma = line.find(',', start);
        if (f < 3) {
            if (comma == std::string::npos) return false;
            out[f] = line.substr(start, comma - start);
            start = comma + 1;
        } else {
            if (comma != std::string::npos) return false;
            out[f] = line.substr(start);
        }
    }
    return true;
}

template <class T>
bool parseNum(const std::string& s, T& out) {
    const char* b = s.data();
    const char* e = b + s.size();
    const auto res = std::from_chars(b, e, out);
    return res.ec == std::errc() && res.ptr == e;
}

}  // namespace

std::vector<Snapshot> readSnapshotCsv(std::istream& is) {
    std::string line;
    int lineNo = 0;

    if (!std::getline(is, line)) throw CsvError(1, "empty snapshot file");
    ++lineNo;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "step,bird_id,x,y")
        throw CsvError(lineNo, "expected header step,bird_id,x,y");

    std::vector<Snapshot> trace;
    while (std::getline(is, line)) {
        ++lineNo;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::string f[4];
        if (!splitFields(line, f)) throw CsvError(lineNo, "expected 4 fields");
        int step = 0;
        BirdPose b;
        if (!parseNum(f[0], step)) throw CsvError(lineNo, "bad step value");
        if (!parseNum(f[1], b.id)) throw CsvError(lineNo, "bad bird_id value");
        if (!parseNum(f[2], b.x)) throw CsvError(lineNo, "bad x value");
        if (!parseNum(f[3], b.y)) throw CsvError(lineNo, "bad y value");
        if (trace.empty() || trace.back().step != step) {
            if (!trace.empty() && step < trace.back().step)
                throw CsvError(lineNo, "steps out of order");
            trace.push_back({step, {}});
        }
        trace.back().birds.push_back(b);
    }
    if (trace.empty()) throw CsvError(lineNo + 1, "no snapshot rows");
    return trace;
}

}  // namespace vform
