// Spatially coupled source matrix bookkeeping.
//
// A frame of L source blocks of T bits is multiplexed into m_sc+1 sub-blocks
// of B = T/(m_sc+1) bits each; sub-block i of source block t lands in coupled
// block t+i at slot i, so coupled block tau draws on source blocks
// [tau-m_sc, tau] and the frame spans L+m_sc coupled times with all-zero
// virtual sub-blocks at both edges.  The permuted path applies the same rule
// to interleaved bit positions, which is what routes extrinsic information
// across time between the two component decoders.

#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "scpcc/interleaver.hpp"

namespace scpcc {

enum class CouplingPath { Plain, Permuted };

struct CoupledCoord {
    int time = 0;      ///< coupled block index
    int position = 0;  ///< offset within the length-T coupled block
};

class CouplingMap {
  public:
    /// Requires T divisible by m_sc+1 and an interleaver of length T.
    CouplingMap(int block_size, int coupling_memory, int frame_blocks, Interleaver interleaver)
        : block_size_(block_size),
          coupling_memory_(coupling_memory),
          frame_blocks_(frame_blocks),
          interleaver_(std::move(interleaver)) {
        if (block_size < 1 || coupling_memory < 0 || frame_blocks < 1)
            throw std::invalid_argument("coupling: need T >= 1, m_sc >= 0, L >= 1");
        if (block_size % (coupling_memory + 1) != 0)
            throw std::invalid_argument("coupling: T must be a multiple of m_sc + 1");
        if (interleaver_.size() != static_cast<std::size_t>(block_size))
            throw std::invalid_argument("coupling: interleaver length must equal T");
        sub_block_size_ = block_size / (coupling_memory + 1);

        const std::size_t bits = static_cast<std::size_t>(frame_blocks) * block_size;
        plain_.resize(bits);
        permuted_.resize(bits);
        plain_inverse_.assign(static_cast<std::size_t>(coupled_blocks()) * block_size, kVirtual);
        permuted_inverse_.assign(plain_inverse_.size(), kVirtual);
        for (int t = 0; t < frame_blocks; ++t) {
            for (int p = 0; p < block_size; ++p) {
                const std::size_t bit = static_cast<std::size_t>(t) * block_size + p;
                plain_[bit] = place(t, p);
                permuted_[bit] = place(t, static_cast<int>(interleaver_(p)));
                plain_inverse_[flat(plain_[bit])] = static_cast<std::int64_t>(bit);
                permuted_inverse_[flat(permuted_[bit])] = static_cast<std::int64_t>(bit);
            }
        }
    }

    int block_size() const { return block_size_; }
    int coupling_memory() const { return coupling_memory_; }
    int frame_blocks() const { return frame_blocks_; }
    int sub_block_size() const { return sub_block_size_; }
    int coupled_blocks() const { return frame_blocks_ + coupling_memory_; }
    std::size_t source_bits() const { return plain_.size(); }
    const Interleaver& interleaver() const { return interleaver_; }

    CoupledCoord coord(std::size_t source_bit, CouplingPath path) const {
        return path == CouplingPath::Plain ? plain_[source_bit] : permuted_[source_bit];
    }

    /// Source bit occupying (tau, position) on the given path, or -1 for a
    /// virtual all-zero position.
    std::int64_t source_at(int tau, int position, CouplingPath path) const {
        check_time(tau);
        const auto& inv = path == CouplingPath::Plain ? plain_inverse_ : permuted_inverse_;
        return inv[static_cast<std::size_t>(tau) * block_size_ + position];
    }

    /// Reads the length-T coupled block at time tau out of a per-source-bit
    /// store.  Virtual positions are perfectly known zeros: they read as
    /// +infinity for LLR stores and as 0 for bit stores.
    template <typename T>
    void gather(const std::vector<T>& store, CouplingPath path, int tau,
                std::vector<T>& out) const {
        check_time(tau);
        out.resize(block_size_);
        const auto& inv = path == CouplingPath::Plain ? plain_inverse_ : permuted_inverse_;
        const std::size_t base = static_cast<std::size_t>(tau) * block_size_;
        T virtual_value;
        if constexpr (std::is_floating_point_v<T>)
            virtual_value = std::numeric_limits<T>::infinity();
        else
            virtual_value = T{0};
        for (int p = 0; p < block_size_; ++p) {
            const std::int64_t bit = inv[base + p];
            out[p] = bit < 0 ? virtual_value : store[bit];
        }
    }

    template <typename T>
    std::vector<T> gather(const std::vector<T>& store, CouplingPath path, int tau) const {
        std::vector<T> out;
        gather(store, path, tau, out);
        return out;
    }

    /// Inverse of gather on real positions; writes to virtual positions are
    /// discarded.  Each write replaces the stored value.
    template <typename T>
    void scatter(std::vector<T>& store, CouplingPath path, int tau,
                 const std::vector<T>& values) const {
        check_time(tau);
        if (values.size() != static_cast<std::size_t>(block_size_))
            throw std::invalid_argument("scatter: expected a length-T block");
        const auto& inv = path == CouplingPath::Plain ? plain_inverse_ : permuted_inverse_;
        const std::size_t base = static_cast<std::size_t>(tau) * block_size_;
        for (int p = 0; p < block_size_; ++p) {
            const std::int64_t bit = inv[base + p];
            if (bit >= 0) store[bit] = values[p];
        }
    }

  private:
    static constexpr std::int64_t kVirtual = -1;

    CoupledCoord place(int t, int p) const {
        const int sub = p / sub_block_size_;
        return CoupledCoord{t + sub, sub * sub_block_size_ + (p % sub_block_size_)};
    }
    std::size_t flat(CoupledCoord c) const {
        return static_cast<std::size_t>(c.time) * block_size_ + c.position;
    }
    void check_time(int tau) const {
        if (tau < 0 || tau >= coupled_blocks())
            throw std::out_of_range("coupling: coupled time out of range");
    }

    int block_size_;
    int coupling_memory_;
    int frame_blocks_;
    int sub_block_size_;
    Interleaver interleaver_;
    std::vector<CoupledCoord> plain_, permuted_;
    std::vector<std::int64_t> plain_inverse_, permuted_inverse_;
};

inline Interleaver build_interleaver(std::size_t length, std::uint64_t seed) {
    return Interleaver::random(length, seed);
}

inline CouplingMap build_coupling_map(int block_size, int coupling_memory, int frame_blocks,
                                      Interleaver interleaver) {
    return CouplingMap(block_size, coupling_memory, frame_blocks, std::move(interleaver));
}

}  // namespace scpcc
