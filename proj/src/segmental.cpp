#include "segsim/segmental.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

namespace segsim {

SegmentMemory::SegmentMemory(std::string model_name, double c, int k, std::size_t num_species)
    : model_name_(std::move(model_name)), c_(c), k_(k), num_species_(num_species) {
    if (k < 1) throw ConfigError("segment capacity k must be >= 1");
}

SegmentMemory::SegmentMemory(SegmentMemory&& other) noexcept
    : model_name_(std::move(other.model_name_)),
      c_(other.c_),
      k_(other.k_),
      num_species_(other.num_species_),
      map_(std::move(other.map_)),
      stored_(other.stored_.load()),
      fresh_(other.fresh_.load()),
      reuse_(other.reuse_.load()),
      fallbacks_(other.fallbacks_.load()) {}

SegmentMemory& SegmentMemory::operator=(SegmentMemory&& other) noexcept {
    if (this != &other) {
        std::scoped_lock lock(mutex_, other.mutex_);
        model_name_ = std::move(other.model_name_);
        c_ = other.c_;
        k_ = other.k_;
        num_species_ = other.num_species_;
        map_ = std::move(other.map_);
        stored_ = other.stored_.load();
        fresh_ = other.fresh_.load();
        reuse_ = other.reuse_.load();
        fallbacks_ = other.fallbacks_.load();
    }
    return *this;
}

Summary SegmentMemory::lookup_or_generate(const AbstractState& a, const CrnModel& model,
                                          const Abstraction& abstraction, RngStream& rng,
                                          bool* generated) {
    if (generated) *generated = false;
    std::unique_lock lock(mutex_);
    Entry& entry = map_[a];  // unordered_map references stay valid across inserts
    if (static_cast<int>(entry.summaries.size()) + entry.inflight < k_) {
        ++entry.inflight;
        lock.unlock();
        Segment segment =
            simulate_until_leaving(model, abstraction.representative(a), abstraction, rng);
        lock.lock();
        --entry.inflight;
        entry.summaries.push_back(segment.summary);
        stored_.fetch_add(1, std::memory_order_relaxed);
        fresh_.fetch_add(1, std::memory_order_relaxed);
        if (generated) *generated = true;
        return std::move(segment.summary);
    }
    if (entry.summaries.empty()) {
        // all k slots are being generated by other workers; produce a one-off
        lock.unlock();
        Segment segment =
            simulate_until_leaving(model, abstraction.representative(a), abstraction, rng);
        fresh_.fetch_add(1, std::memory_order_relaxed);
        if (generated) *generated = true;
        return std::move(segment.summary);
    }
    const std::size_t pick = rng.uniform_below(entry.summaries.size());
    reuse_.fetch_add(1, std::memory_order_relaxed);
    return entry.summaries[pick];
}

void SegmentMemory::insert(const AbstractState& a, Summary summary) {
    std::lock_guard lock(mutex_);
    Entry& entry = map_[a];
    if (static_cast<int>(entry.summaries.size()) >= k_) {
        throw ConfigError("segment memory insert beyond capacity k");
    }
    entry.summaries.push_back(std::move(summary));
    stored_.fetch_add(1, std::memory_order_relaxed);
}

MemoryStats SegmentMemory::stats() const {
    std::lock_guard lock(mutex_);
    MemoryStats s;
    s.visited_states = map_.size();
    s.stored_summaries = stored_.load();
    // one summary: |Lambda| 4-byte deltas plus an 8-byte time; keys cost about
    // one level vector plus hash-table bookkeeping
    s.approx_bytes = s.stored_summaries * (num_species_ * 4 + 8) +
                     s.visited_states * (num_species_ * 4 + 16);
    return s;
}

nlohmann::json SegmentMemory::export_json() const {
    std::lock_guard lock(mutex_);
    nlohmann::json doc;
    doc["version"] = 1;
    doc["model"] = model_name_;
    doc["c"] = c_;
    doc["k"] = k_;
    doc["num_species"] = num_species_;
    // canonical order: sorted by level vector, so exports are reproducible
    // regardless of hash-map layout
    std::vector<const decltype(map_)::value_type*> ordered;
    ordered.reserve(map_.size());
    for (const auto& kv : map_) ordered.push_back(&kv);
    std::sort(ordered.begin(), ordered.end(),
              [](const auto* x, const auto* y) { return x->first.levels < y->first.levels; });
    nlohmann::json states = nlohmann::json::array();
    for (const auto* kv : ordered) {
        const auto& [a, entry] = *kv;
        nlohmann::json rec;
        rec["levels"] = a.levels;
        nlohmann::json summaries = nlohmann::json::array();
        for (const Summary& s : entry.summaries) {
            nlohmann::json item;
            item["delta"] = s.delta_state;
            if (s.terminal()) {
                item["dt"] = "inf";
            } else {
                item["dt"] = s.delta_time;
            }
            summaries.push_back(std::move(item));
        }
        rec["summaries"] = std::move(summaries);
        states.push_back(std::move(rec));
    }
    doc["states"] = std::move(states);
    return doc;
}

SegmentMemory SegmentMemory::import_json(const nlohmann::json& doc) {
    try {
        if (doc.at("version").get<int>() != 1) {
            throw FormatError("unsupported segment-memory version");
        }
        SegmentMemory memory(doc.at("model").get<std::string>(), doc.at("c").get<double>(),
                             doc.at("k").get<int>(), doc.at("num_species").get<std::size_t>());
        for (const auto& rec : doc.at("states")) {
            AbstractState a;
            a.levels = rec.at("levels").get<std::vector<std::int32_t>>();
            if (a.levels.size() != memory.num_species_) {
                throw FormatError("segment-memory level vector has wrong length");
            }
            for (const auto& item : rec.at("summaries")) {
                Summary s;
                s.delta_state = item.at("delta").get<std::vector<Count>>();
                if (s.delta_state.size() != memory.num_species_) {
                    throw FormatError("segment-memory summary has wrong length");
                }
                const auto& dt = item.at("dt");
                s.delta_time = dt.is_string() ? std::numeric_limits<double>::infinity()
                                              : dt.get<double>();
                memory.insert(a, std::move(s));
            }
        }
        return memory;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed segment-memory document: ") + e.what());
    }
}

void SegmentMemory::check_compatible(const std::string& model_name, double c,
                                     std::size_t num_species) const {
    if (model_name_ != model_name || c_ != c || num_species_ != num_species) {
        throw FormatError("segment memory was built for model '" + model_name_ +
                          "' with c=" + std::to_string(c_) + ", not for '" + model_name +
                          "' with c=" + std::to_string(c));
    }
}

Run segmental_simulate(const CrnModel& model, const State& s_init, double t_end,
                       const Abstraction& abstraction, SegmentMemory& memory, RngStream& rng) {
    const auto start_clock = std::chrono::steady_clock::now();

    Run run;
    State state = s_init;
    double t = 0.0;
    run.seams.push_back({state, 0.0});

    while (t < t_end) {
        const AbstractState a = abstraction.abstract_state(state);
        bool fresh = false;
        Summary summary = memory.lookup_or_generate(a, model, abstraction, rng, &fresh);
        if (summary.terminal()) {
            // the state is absorbing: hold it and advance time to the horizon
            run.terminal = Terminal::Deadlock;
            run.seams.push_back({state, t_end});
            t = t_end;
            break;
        }

        bool feasible = true;
        for (std::size_t i = 0; i < state.counts.size(); ++i) {
            const Count next = state.counts[i] + summary.delta_state[i];
            if (next < 0 || (!model.bounds.empty() && next > model.bounds[i])) {
                feasible = false;
                break;
            }
        }
        if (!feasible) {
            // one-off segment from the concrete state; its start is not a
            // representative, so it is never stored
            memory.note_fallback();
            ++run.stats.fallbacks;
            const Segment one_off = simulate_until_leaving(model, state, abstraction, rng);
            if (one_off.summary.terminal()) {
                run.terminal = Terminal::Deadlock;
                run.seams.push_back({state, t_end});
                t = t_end;
                break;
            }
            summary = one_off.summary;
        } else if (fresh) {
            ++run.stats.fresh_segments;
        } else {
            ++run.stats.reused_segments;
        }

        for (std::size_t i = 0; i < state.counts.size(); ++i) {
            state.counts[i] += summary.delta_state[i];
        }
        t += summary.delta_time;
        ++run.stats.summaries_applied;
        run.seams.push_back({state, t});
    }

    run.stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_clock).count();
    return run;
}

}  // namespace segsim
