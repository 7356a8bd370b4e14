#include "truncdist/oracle.hpp"

#include <algorithm>

namespace truncdist {

OracleSession::OracleSession(const Params& params, World world, std::uint64_t seed)
    : params_(params), world_(world), rng_(seed) {
    assigned_.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(params_.q, 1 << 20)));
}

std::uint64_t OracleSession::query(std::uint64_t input) {
    if (input >= params_.domain_size())
        throw params_error("query input out of range");
    if (auto it = assigned_.find(input); it != assigned_.end())
        return it->second >> params_.m;
    if (assigned_.size() >= params_.q)
        throw budget_error("query budget of q=" + std::to_string(params_.q) + " exhausted");

    std::uint64_t full;
    if (world_ == World::Function) {
        full = rng_.next_bits(params_.n);
    } else {
        do {
            full = rng_.next_bits(params_.n);
        } while (used_outputs_.contains(full));
        used_outputs_.insert(full);
    }
    assigned_.emplace(input, full);
    return full >> params_.m;
}

ReplySequence sample_reply_sequence(const Params& params, World world, std::uint64_t seed) {
    BatchSampler sampler(params);
    SplitMix64 rng(seed);
    ReplySequence out;
    sampler.sample(world, rng, out);
    return out;
}

namespace {
// Dense used-output bitmaps up to 2 MiB (domains of 2^24).
constexpr unsigned kDenseDomainBits = 24;
}  // namespace

BatchSampler::BatchSampler(const Params& params)
    : params_(params), dense_(params.n <= kDenseDomainBits) {
    if (dense_) {
        used_bits_.assign(std::size_t(params_.domain_size() + 63) / 64, 0);
        touched_words_.reserve(static_cast<std::size_t>(params_.q));
    } else {
        used_set_.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(params_.q * 2, 1 << 21)));
    }
}

void BatchSampler::sample(World world, SplitMix64& rng, ReplySequence& out) {
    const unsigned n = params_.n, m = params_.m;
    const std::uint64_t q = params_.q;
    out.resize(static_cast<std::size_t>(q));

    if (world == World::Function) {
        for (std::uint64_t i = 0; i < q; ++i)
            out[static_cast<std::size_t>(i)] = rng.next_bits(n) >> m;
        return;
    }

    if (dense_) {
        for (std::uint64_t i = 0; i < q; ++i) {
            std::uint64_t full, w, bit;
            for (;;) {
                full = rng.next_bits(n);
                w = full >> 6;
                bit = std::uint64_t(1) << (full & 63);
                if (!(used_bits_[static_cast<std::size_t>(w)] & bit)) break;
            }
            if (used_bits_[static_cast<std::size_t>(w)] == 0)
                touched_words_.push_back(w);
            used_bits_[static_cast<std::size_t>(w)] |= bit;
            out[static_cast<std::size_t>(i)] = full >> m;
        }
        for (std::uint64_t w : touched_words_) used_bits_[static_cast<std::size_t>(w)] = 0;
        touched_words_.clear();
    } else {
        used_set_.clear();
        for (std::uint64_t i = 0; i < q; ++i) {
            std::uint64_t full;
            do {
                full = rng.next_bits(n);
            } while (used_set_.contains(full));
            used_set_.insert(full);
            out[static_cast<std::size_t>(i)] = full >> m;
        }
    }
}

}  // namespace truncdist
