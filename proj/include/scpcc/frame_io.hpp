// Bit packing and the coded-frame file format.
//
// Frame files carry a small header (magic, version, params hash, dimensions)
// followed by the transmitted bits packed LSB-first in coupled-time order:
// for each coupled time, the systematic block (real times only), then the
// two parity blocks.

#pragma once

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "scpcc/codec.hpp"

namespace scpcc {

class BitPacker {
  public:
    void push(const Bits& bits) {
        for (std::uint8_t b : bits) push(b);
    }
    void push(std::uint8_t bit) {
        if (fill_ == 0) bytes_.push_back(0);
        if (bit) bytes_.back() |= static_cast<std::uint8_t>(1u << fill_);
        fill_ = (fill_ + 1) % 8;
    }
    const std::vector<std::uint8_t>& bytes() const { return bytes_; }

  private:
    std::vector<std::uint8_t> bytes_;
    int fill_ = 0;
};

class BitUnpacker {
  public:
    explicit BitUnpacker(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}
    std::uint8_t next() {
        if (pos_ / 8 >= bytes_.size()) throw std::runtime_error("bit stream exhausted");
        const std::uint8_t bit = (bytes_[pos_ / 8] >> (pos_ % 8)) & 1u;
        ++pos_;
        return bit;
    }
    Bits next(std::size_t count) {
        Bits out(count);
        for (auto& b : out) b = next();
        return out;
    }

  private:
    const std::vector<std::uint8_t>& bytes_;
    std::size_t pos_ = 0;
};

namespace detail {

inline void write_u32(std::ostream& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xff));
}
inline void write_u64(std::ostream& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xff));
}
inline std::uint32_t read_u32(std::istream& in) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in.get() & 0xff) << (8 * i);
    return v;
}
inline std::uint64_t read_u64(std::istream& in) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(in.get() & 0xff) << (8 * i);
    return v;
}

inline constexpr std::uint32_t kFrameMagic = 0x46504353u;  // "SCPF"
inline constexpr std::uint32_t kFrameVersion = 1;

}  // namespace detail

inline void save_frame_file(const CodedFrame& frame, const ScPccParams& params,
                            const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write frame file: " + path);
    detail::write_u32(out, detail::kFrameMagic);
    detail::write_u32(out, detail::kFrameVersion);
    detail::write_u64(out, params_hash(params));
    detail::write_u32(out, static_cast<std::uint32_t>(params.frame_blocks));
    detail::write_u32(out, static_cast<std::uint32_t>(params.block_size));
    detail::write_u32(out, static_cast<std::uint32_t>(params.coupling_memory));
    detail::write_u32(out, static_cast<std::uint32_t>(frame.parity_length));

    BitPacker packer;
    for (int tau = 0; tau < params.coupled_blocks(); ++tau) {
        if (tau < params.frame_blocks) packer.push(frame.systematic[tau]);
        packer.push(frame.parity1[tau]);
        packer.push(frame.parity2[tau]);
    }
    out.write(reinterpret_cast<const char*>(packer.bytes().data()),
              static_cast<std::streamsize>(packer.bytes().size()));
}

inline CodedFrame load_frame_file(const ScPccParams& params, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open frame file: " + path);
    if (detail::read_u32(in) != detail::kFrameMagic)
        throw std::runtime_error("not a frame file: " + path);
    if (detail::read_u32(in) != detail::kFrameVersion)
        throw std::runtime_error("unsupported frame file version: " + path);
    const std::uint64_t hash = detail::read_u64(in);
    if (hash != params_hash(params))
        throw std::runtime_error("frame file params hash mismatch (file written with a "
                                 "different code/config): " + path);
    const std::uint32_t frame_blocks = detail::read_u32(in);
    const std::uint32_t block_size = detail::read_u32(in);
    const std::uint32_t coupling_memory = detail::read_u32(in);
    const std::uint32_t parity_length = detail::read_u32(in);
    if (frame_blocks != static_cast<std::uint32_t>(params.frame_blocks) ||
        block_size != static_cast<std::uint32_t>(params.block_size) ||
        coupling_memory != static_cast<std::uint32_t>(params.coupling_memory) ||
        parity_length != static_cast<std::uint32_t>(params.parity_block_length()))
        throw std::runtime_error("frame file dimensions mismatch: " + path);

    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    BitUnpacker unpacker(bytes);
    CodedFrame frame;
    frame.block_size = params.block_size;
    frame.parity_length = static_cast<int>(parity_length);
    frame.systematic.resize(params.frame_blocks);
    for (int tau = 0; tau < params.coupled_blocks(); ++tau) {
        if (tau < params.frame_blocks)
            frame.systematic[tau] = unpacker.next(params.block_size);
        frame.parity1.push_back(unpacker.next(parity_length));
        frame.parity2.push_back(unpacker.next(parity_length));
    }
    return frame;
}

/// Raw packed-bit payload files (encode input / decode output).
inline Bits load_bits_file(const std::string& path, std::size_t bit_count) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open bits file: " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (bytes.size() != (bit_count + 7) / 8)
        throw std::runtime_error("bits file has wrong size for L*T payload: " + path);
    BitUnpacker unpacker(bytes);
    return unpacker.next(bit_count);
}

inline void save_bits_file(const Bits& bits, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write bits file: " + path);
    BitPacker packer;
    packer.push(bits);
    out.write(reinterpret_cast<const char*>(packer.bytes().data()),
              static_cast<std::streamsize>(packer.bytes().size()));
}

}  // namespace scpcc
