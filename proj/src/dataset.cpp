#include "tstdp/dataset.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "tstdp/csv.hpp"
#include "tstdp/errors.hpp"

namespace tstdp {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    return fields;
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& message) {
    throw DatasetError(origin + ":" + std::to_string(line) + ": " + message);
}

double parse_number(const std::string& s, const std::string& origin, int line) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        fail(origin, line, "not a number: \"" + s + "\"");
    }
    return value;
}

int parse_count(const std::string& s, const std::string& origin, int line) {
    const double v = parse_number(s, origin, line);
    const int n = static_cast<int>(v);
    if (v != n || n < 1) fail(origin, line, "repetition count must be a positive integer");
    return n;
}

} // namespace

Dataset parse_dataset(const std::string& text, const std::string& origin,
                      const std::string& default_name) {
    Dataset dataset;
    dataset.name = default_name;

    std::stringstream stream(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(stream, raw)) {
        ++line_no;
        std::string line = trim(raw);
        if (line.rfind("# name:", 0) == 0) {
            dataset.name = trim(line.substr(7));
            continue;
        }
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = trim(line.substr(0, hash));
        if (line.empty()) continue;

        const std::vector<std::string> f = split_fields(line);
        DataPoint point;
        try {
            if (f[0] == "pairing") {
                if (f.size() != 6) fail(origin, line_no, "pairing rows take 6 fields");
                point.protocol = PairingProtocol{parse_number(f[1], origin, line_no) * 1e-3,
                                                 parse_number(f[2], origin, line_no),
                                                 parse_count(f[3], origin, line_no)};
                point.dw_exp = parse_number(f[4], origin, line_no);
                point.sem = parse_number(f[5], origin, line_no);
            } else if (f[0] == "triplet") {
                if (f.size() != 8) fail(origin, line_no, "triplet rows take 8 fields");
                point.protocol = TripletProtocol{triplet_kind_from_string(f[1]),
                                                 parse_number(f[2], origin, line_no) * 1e-3,
                                                 parse_number(f[3], origin, line_no) * 1e-3,
                                                 parse_number(f[4], origin, line_no),
                                                 parse_count(f[5], origin, line_no)};
                point.dw_exp = parse_number(f[6], origin, line_no);
                point.sem = parse_number(f[7], origin, line_no);
            } else if (f[0] == "quadruplet") {
                if (f.size() != 7) fail(origin, line_no, "quadruplet rows take 7 fields");
                point.protocol = QuadrupletProtocol{parse_number(f[1], origin, line_no) * 1e-3,
                                                    parse_number(f[2], origin, line_no) * 1e-3,
                                                    parse_number(f[3], origin, line_no),
                                                    parse_count(f[4], origin, line_no)};
                point.dw_exp = parse_number(f[5], origin, line_no);
                point.sem = parse_number(f[6], origin, line_no);
            } else {
                fail(origin, line_no, "unknown protocol tag \"" + f[0] + "\"");
            }
            if (!(point.sem > 0.0)) fail(origin, line_no, "sem must be > 0");
            generate(point.protocol); // surfaces invalid protocol parameters here
        } catch (const ProtocolError& err) {
            fail(origin, line_no, err.what());
        }
        dataset.points.push_back(std::move(point));
    }
    if (dataset.points.empty()) {
        throw DatasetError(origin + ": dataset holds no data points");
    }
    return dataset;
}

Dataset load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DatasetError("cannot open dataset file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_dataset(buffer.str(), path.string(), path.stem().string());
}

std::string dataset_to_text(const Dataset& dataset) {
    std::string out = "# name: " + dataset.name + "\n";
    for (const DataPoint& point : dataset.points) {
        std::visit(
            [&](const auto& p) {
                using P = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<P, PairingProtocol>) {
                    out += "pairing," + format_number(p.dt * 1e3) + "," + format_number(p.rho) +
                           "," + std::to_string(p.n_pairs);
                } else if constexpr (std::is_same_v<P, TripletProtocol>) {
                    out += "triplet," + to_string(p.kind) + "," + format_number(p.dt1 * 1e3) +
                           "," + format_number(p.dt2 * 1e3) + "," + format_number(p.rho) + "," +
                           std::to_string(p.n);
                } else if constexpr (std::is_same_v<P, QuadrupletProtocol>) {
                    out += "quadruplet," + format_number(p.dt * 1e3) + "," +
                           format_number(p.T * 1e3) + "," + format_number(p.rho) + "," +
                           std::to_string(p.n);
                } else {
                    throw DatasetError("dataset files cover pairing, triplet and quadruplet "
                                       "protocols only");
                }
            },
            point.protocol);
        out += "," + format_number(point.dw_exp) + "," + format_number(point.sem) + "\n";
    }
    return out;
}

} // namespace tstdp
