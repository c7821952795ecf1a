// Seeded uniform random permutations for the turbo interleaver.

#pragma once

#include <cstdint>
#include <fstream>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "scpcc/seeding.hpp"

namespace scpcc {

/// Bijection on {0..T-1}.  The permutation is produced by an explicit
/// Fisher-Yates pass over a splitmix-seeded mt19937_64, so a (length, seed)
/// pair maps to the same permutation on every platform.
class Interleaver {
  public:
    Interleaver() = default;

    static Interleaver random(std::size_t length, std::uint64_t seed) {
        Interleaver pi;
        pi.seed_ = seed;
        pi.perm_.resize(length);
        std::iota(pi.perm_.begin(), pi.perm_.end(), std::size_t{0});
        std::mt19937_64 rng(mix_seed(seed, 0x1e4fULL));
        for (std::size_t i = length; i > 1; --i) {
            std::uniform_int_distribution<std::size_t> pick(0, i - 1);
            std::swap(pi.perm_[i - 1], pi.perm_[pick(rng)]);
        }
        return pi;
    }

    static Interleaver identity(std::size_t length) {
        Interleaver pi;
        pi.perm_.resize(length);
        std::iota(pi.perm_.begin(), pi.perm_.end(), std::size_t{0});
        return pi;
    }

    std::size_t size() const { return perm_.size(); }
    std::uint64_t seed() const { return seed_; }
    std::size_t operator()(std::size_t i) const { return perm_[i]; }
    const std::vector<std::size_t>& permutation() const { return perm_; }

    /// Plain-text export: one index per line.
    void save(const std::string& path) const {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write interleaver file: " + path);
        for (std::size_t v : perm_) out << v << "\n";
    }

    static Interleaver load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open interleaver file: " + path);
        Interleaver pi;
        std::size_t v;
        while (in >> v) pi.perm_.push_back(v);
        std::vector<char> hit(pi.perm_.size(), 0);
        for (std::size_t x : pi.perm_) {
            if (x >= pi.perm_.size() || hit[x])
                throw std::runtime_error("interleaver file is not a permutation: " + path);
            hit[x] = 1;
        }
        return pi;
    }

  private:
    std::vector<std::size_t> perm_;
    std::uint64_t seed_ = 0;
};

}  // namespace scpcc
