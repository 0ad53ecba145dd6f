#include "segsim/archive.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "segsim/errors.hpp"

namespace segsim {

namespace {

std::string format_double(double value) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw FormatError("archive: bad number '" + std::string(s) + "'");
    }
    return v;
}

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

}  // namespace

void write_archive(std::ostream& out, const ArchiveHeader& header, const std::vector<Run>& runs) {
    out << "#segsim-archive v" << header.version << "\n";
    out << "#model=" << header.model << " method=" << header.method
        << " c=" << format_double(header.c) << " k=" << header.k << " seed=" << header.seed
        << " runs=" << header.n_runs << " threads=" << header.threads << "\n";
    out << "#columns=run,time";
    for (const auto& col : header.columns) out << "," << col;
    out << "\n";
    for (std::size_t i = 0; i < runs.size(); ++i) {
        if (runs[i].terminal == Terminal::Deadlock) out << "#deadlock=" << i << "\n";
    }
    for (std::size_t i = 0; i < runs.size(); ++i) {
        for (const Seam& seam : runs[i].seams) {
            out << i << "," << format_double(seam.time);
            for (Count x : seam.state.counts) out << "," << x;
            out << "\n";
        }
    }
}

void write_archive_file(const std::string& path, const ArchiveHeader& header,
                        const std::vector<Run>& runs) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot open '" + path + "' for writing");
    write_archive(out, header, runs);
}

Archive read_archive(std::istream& in) {
    Archive archive;
    std::string line;
    if (!std::getline(in, line) || !line.starts_with("#segsim-archive v")) {
        throw FormatError("not a segsim archive");
    }
    archive.header.version = static_cast<int>(parse_double(std::string_view(line).substr(17)));
    if (archive.header.version != 1) throw FormatError("unsupported archive version");

    if (!std::getline(in, line) || !line.starts_with("#")) {
        throw FormatError("archive: missing parameter line");
    }
    {
        std::istringstream params(line.substr(1));
        std::string kv;
        while (params >> kv) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw FormatError("archive: bad parameter '" + kv + "'");
            const std::string key = kv.substr(0, eq);
            const std::string value = kv.substr(eq + 1);
            if (key == "model") archive.header.model = value;
            else if (key == "method") archive.header.method = value;
            else if (key == "c") archive.header.c = parse_double(value);
            else if (key == "k") archive.header.k = static_cast<int>(parse_double(value));
            else if (key == "seed") archive.header.seed = std::stoull(value);
            else if (key == "runs") archive.header.n_runs = std::stoull(value);
            else if (key == "threads") archive.header.threads = static_cast<int>(parse_double(value));
            else throw FormatError("archive: unknown parameter '" + key + "'");
        }
    }

    if (!std::getline(in, line) || !line.starts_with("#columns=run,time")) {
        throw FormatError("archive: missing columns line");
    }
    for (const auto field : split_commas(std::string_view(line).substr(9))) {
        if (field == "run" || field == "time") continue;
        archive.header.columns.emplace_back(field);
    }
    const std::size_t n_species = archive.header.columns.size();

    archive.runs.resize(archive.header.n_runs);
    std::vector<std::size_t> deadlocked;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.starts_with("#deadlock=")) {
            deadlocked.push_back(std::stoull(line.substr(10)));
            continue;
        }
        const auto fields = split_commas(line);
        if (fields.size() != n_species + 2) throw FormatError("archive: wrong field count");
        const std::size_t run_idx = std::stoull(std::string(fields[0]));
        if (run_idx >= archive.runs.size()) throw FormatError("archive: run index out of range");
        Seam seam;
        seam.time = parse_double(fields[1]);
        seam.state.counts.reserve(n_species);
        for (std::size_t i = 0; i < n_species; ++i) {
            Count x = 0;
            const auto f = fields[i + 2];
            const auto res = std::from_chars(f.data(), f.data() + f.size(), x);
            if (res.ec != std::errc()) throw FormatError("archive: bad count");
            seam.state.counts.push_back(x);
        }
        archive.runs[run_idx].seams.push_back(std::move(seam));
    }
    for (std::size_t idx : deadlocked) {
        if (idx >= archive.runs.size()) throw FormatError("archive: bad deadlock index");
        archive.runs[idx].terminal = Terminal::Deadlock;
    }
    for (const Run& run : archive.runs) {
        if (run.seams.empty()) throw FormatError("archive: run without seams");
    }
    return archive;
}

Archive read_archive_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open archive '" + path + "'");
    return read_archive(in);
}

}  // namespace segsim
