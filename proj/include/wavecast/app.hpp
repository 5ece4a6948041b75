#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "wavecast/channel.hpp"
#include "wavecast/pixmap.hpp"
#include "wavecast/transit.hpp"

namespace wavecast::app {

/// Flat key=value report, insertion-ordered.
class Report {
public:
    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, std::size_t value) { set(key, std::to_string(value)); }
    void set(const std::string& key, double value);

    const std::string* get(const std::string& key) const;
    std::string str() const;

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

struct TransformSnapshots {
    Image row_pass;  ///< level-1 row pass only
    Image col_pass;  ///< full level-1 2-D step
    Image pyramid;   ///< all levels
};

/// Coefficient views for display. Approximation regions are shown raw,
/// detail regions as clamp(floor(c/2) + 128). Images cover the padded block
/// grid.
TransformSnapshots transform_snapshots(const Image& img, int block_size, int levels);

struct EncodedStream {
    StreamInfo info;
    std::vector<Packet> packets;
    std::vector<std::uint8_t> bytes;
    std::size_t payload_bytes = 0;  ///< sum of data packet payloads before FEC
};

/// split -> transform -> quantize -> packetize -> serialize.
EncodedStream encode_image(const Image& img, const StreamInfo& info);

struct ReceiveOutcome {
    StreamInfo info;
    std::vector<Image> stages;  ///< reconstruction after each coarse-to-fine stage
    Image image;                ///< after every received packet
    std::size_t packets = 0;
    std::size_t packets_rejected = 0;
    std::size_t bits_corrected = 0;
    std::size_t words_uncorrectable = 0;
    std::size_t uncorrectable_packets = 0;

    bool clean() const { return packets_rejected == 0 && words_uncorrectable == 0; }
};

/// parse -> receive -> reconstruct, with a snapshot at every stage boundary.
ReceiveOutcome receive_stream(std::span<const std::uint8_t> bytes);

struct RunConfig {
    std::string input;
    std::string output;  ///< directory, or stream file for send/corrupt
    int block_size = 64;
    int levels = kDefaultLevels;
    QTable qtable;
    HammingCode code = HammingCode::secded_8_4();
    ChannelModel channel;
    std::uint16_t image_id = 1;
    std::string reference;  ///< optional reference image for receive
};

std::string describe(const ChannelModel& m);

// Each command returns the process exit code: 0 on success, 2 when the stream
// had uncorrectable errors or rejected packets. I/O and configuration errors
// are thrown. Summaries go to `out` as key=value lines.
int cmd_transform(const RunConfig& cfg, std::ostream& out);
int cmd_roundtrip(const RunConfig& cfg, std::ostream& out);
int cmd_send(const RunConfig& cfg, std::ostream& out);
int cmd_corrupt(const RunConfig& cfg, std::ostream& out);
int cmd_receive(const RunConfig& cfg, std::ostream& out);

std::string stage_filename(int stage);

std::vector<std::uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, std::span<const std::uint8_t> bytes);

}  // namespace wavecast::app
