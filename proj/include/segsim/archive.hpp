#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "segsim/run.hpp"

namespace segsim {

/// Header of a run-archive CSV. The parameters are enough to reproduce the
/// archive bit-exactly in single-threaded mode.
struct ArchiveHeader {
    int version = 1;
    std::string model;
    std::string method;  // ssa | segmental | abstract
    double c = 0.0;      // 0 when not applicable (ssa)
    int k = 0;
    std::uint64_t seed = 0;
    std::uint64_t n_runs = 0;
    int threads = 1;
    std::vector<std::string> columns;  // per-species column names (counts or levels)
};

/// Format:
///   #segsim-archive v1
///   #model=PP method=ssa c=0 k=0 seed=7 runs=2 threads=1
///   #columns=run,time,Pred,Prey
///   0,0,200,200
///   ...
/// Numbers use shortest round-trip formatting, so write/read/write is
/// byte-stable.
void write_archive(std::ostream& out, const ArchiveHeader& header, const std::vector<Run>& runs);
void write_archive_file(const std::string& path, const ArchiveHeader& header,
                        const std::vector<Run>& runs);

struct Archive {
    ArchiveHeader header;
    std::vector<Run> runs;
};

Archive read_archive(std::istream& in);         // throws FormatError
Archive read_archive_file(const std::string& path);

}  // namespace segsim
