#include "wavecast/app.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <iterator>

#include "wavecast/haar.hpp"
#include "wavecast/quant.hpp"

namespace wavecast::app {

namespace fs = std::filesystem;

void Report::set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : entries_) {
        if (k == key) {
            v = value;
            return;
        }
    }
    entries_.emplace_back(key, value);
}

void Report::set(const std::string& key, double value) {
    if (std::isinf(value)) {
        set(key, std::string(value > 0 ? "inf" : "-inf"));
        return;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    set(key, std::string(buf));
}

const std::string* Report::get(const std::string& key) const {
    for (const auto& [k, v] : entries_)
        if (k == key) return &v;
    return nullptr;
}

std::string Report::str() const {
    std::string out;
    for (const auto& [k, v] : entries_) out += k + "=" + v + "\n";
    return out;
}

namespace {

std::uint8_t display_detail(std::int32_t c) { return static_cast<std::uint8_t>(std::clamp(floor_half(c) + 128, 0, 255)); }

std::uint8_t display_approx(std::int32_t c) { return static_cast<std::uint8_t>(std::clamp(c, 0, 255)); }

// Copies a block's coefficient layout into the snapshot image; the top-left
// approx_rows x approx_cols region is shown raw.
void paint(Image& out, const Block& origin, const CoeffGrid& g, int approx_rows, int approx_cols) {
    for (int r = 0; r < g.rows; ++r) {
        for (int c = 0; c < g.cols; ++c) {
            const bool approx = r < approx_rows && c < approx_cols;
            out.at(origin.x + c, origin.y + r) = approx ? display_approx(g(r, c)) : display_detail(g(r, c));
        }
    }
}

CoeffGrid as_grid(const Block& b) {
    CoeffGrid g(b.size, b.size);
    g.data.assign(b.samples.begin(), b.samples.end());
    return g;
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create directory " + dir + ": " + ec.message());
}

std::string join(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot create " + path);
    f << text;
    if (!f) throw std::runtime_error("write failed: " + path);
}

StreamInfo stream_info(const RunConfig& cfg, const Image& img) {
    StreamInfo info;
    info.image_id = cfg.image_id;
    info.width = img.width;
    info.height = img.height;
    info.block_size = cfg.block_size;
    info.levels = cfg.levels;
    info.code = cfg.code;
    info.qtable = cfg.qtable;
    info.validate();
    return info;
}

void write_stages(const std::string& dir, const ReceiveOutcome& rx) {
    for (std::size_t s = 0; s < rx.stages.size(); ++s)
        write_pgm_file(join(dir, stage_filename(static_cast<int>(s) + 1)), rx.stages[s]);
}

void report_outcome(Report& rep, const ReceiveOutcome& rx, const Image* reference) {
    rep.set("packets", rx.packets);
    rep.set("packets_rejected", rx.packets_rejected);
    rep.set("bits_corrected", rx.bits_corrected);
    rep.set("words_uncorrectable", rx.words_uncorrectable);
    if (reference == nullptr) return;
    const auto m = compute_metrics(*reference, rx.image);
    rep.set("mse", m.mse);
    rep.set("psnr", m.psnr);
    for (std::size_t s = 0; s < rx.stages.size(); ++s) {
        char key[32];
        std::snprintf(key, sizeof key, "stage_%02zu_mse", s + 1);
        rep.set(key, compute_metrics(*reference, rx.stages[s]).mse);
    }
}

}  // namespace

TransformSnapshots transform_snapshots(const Image& img, int block_size, int levels) {
    const auto blocks = split_blocks(img, block_size);
    const int w = blocks_across(img.width, block_size) * block_size;
    const int h = blocks_across(img.height, block_size) * block_size;
    TransformSnapshots snap{Image(w, h), Image(w, h), Image(w, h)};
    const int half = block_size / 2;
    const int top = block_size >> levels;

    for (const auto& b : blocks) {
        CoeffGrid g = as_grid(b);
        forward_rows(g, g.rows, g.cols);
        paint(snap.row_pass, b, g, block_size, half);
        forward_cols(g, g.rows, g.cols);
        paint(snap.col_pass, b, g, half, half);
        paint(snap.pyramid, b, assemble_layout(forward_multilevel(b, levels)), top, top);
    }
    return snap;
}

EncodedStream encode_image(const Image& img, const StreamInfo& info) {
    info.validate();
    std::vector<CoeffPyramid> pyramids;
    for (const auto& b : split_blocks(img, info.block_size))
        pyramids.push_back(quantize(forward_multilevel(b, info.levels), info.qtable));

    EncodedStream out;
    out.info = info;
    out.packets = packetize(pyramids, info);
    out.bytes = serialize_stream(info, out.packets);
    for (const auto& p : out.packets) out.payload_bytes += p.payload.size();
    return out;
}

ReceiveOutcome receive_stream(std::span<const std::uint8_t> bytes) {
    const ParsedStream parsed = parse_stream(bytes);
    ReceiveOutcome rx;
    rx.info = parsed.info;
    rx.packets_rejected = parsed.rejected;

    const int stages = stage_count(parsed.info.levels);
    std::vector<std::vector<const ParsedPacket*>> by_stage(static_cast<std::size_t>(stages));
    for (const auto& pp : parsed.packets) {
        const int s = stage_index({pp.packet.level, pp.packet.kind}, parsed.info.levels);
        if (s < 0) {
            ++rx.packets_rejected;
            continue;
        }
        by_stage[static_cast<std::size_t>(s)].push_back(&pp);
    }

    Receiver receiver(parsed.info);
    for (const auto& stage : by_stage) {
        for (const ParsedPacket* pp : stage) {
            try {
                receiver.receive(pp->packet, pp->fec);
            } catch (const ReceiveError&) {
                ++rx.packets_rejected;
            }
        }
        rx.stages.push_back(receiver.reconstruct_partial());
    }
    rx.image = rx.stages.back();
    rx.packets = receiver.packets_received();
    rx.bits_corrected = receiver.bits_corrected();
    rx.words_uncorrectable = receiver.words_uncorrectable();
    rx.uncorrectable_packets = receiver.uncorrectable_packets();
    return rx;
}

std::string describe(const ChannelModel& m) {
    char buf[96];
    if (m.kind == ChannelModel::Kind::bsc)
        std::snprintf(buf, sizeof buf, "bsc(p=%g)", m.p);
    else
        std::snprintf(buf, sizeof buf, "burst(rate=%g,len=%d)", m.burst_rate, m.burst_len);
    return buf;
}

std::string stage_filename(int stage) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "stage_%02d.pgm", stage);
    return buf;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot create " + path);
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw std::runtime_error("write failed: " + path);
}

int cmd_transform(const RunConfig& cfg, std::ostream& out) {
    const Image img = read_pgm_file(cfg.input);
    const auto snap = transform_snapshots(img, cfg.block_size, cfg.levels);
    ensure_dir(cfg.output);
    write_pgm_file(join(cfg.output, "row_pass.pgm"), snap.row_pass);
    write_pgm_file(join(cfg.output, "col_pass.pgm"), snap.col_pass);
    write_pgm_file(join(cfg.output, "pyramid.pgm"), snap.pyramid);
    out << "row_pass=" << join(cfg.output, "row_pass.pgm") << "\n"
        << "col_pass=" << join(cfg.output, "col_pass.pgm") << "\n"
        << "pyramid=" << join(cfg.output, "pyramid.pgm") << "\n";
    return 0;
}

int cmd_roundtrip(const RunConfig& cfg, std::ostream& out) {
    const Image img = read_pgm_file(cfg.input);
    const auto encoded = encode_image(img, stream_info(cfg, img));
    const auto noisy = transmit_bytes(encoded.bytes, cfg.channel);
    const auto rx = receive_stream(noisy);

    ensure_dir(cfg.output);
    write_pgm_file(join(cfg.output, "reconstructed.pgm"), rx.image);
    write_stages(cfg.output, rx);

    Report rep;
    rep.set("width", static_cast<std::size_t>(img.width));
    rep.set("height", static_cast<std::size_t>(img.height));
    rep.set("block_size", static_cast<std::size_t>(cfg.block_size));
    rep.set("levels", static_cast<std::size_t>(cfg.levels));
    rep.set("code", cfg.code.name());
    rep.set("qtable", cfg.qtable.format(cfg.levels));
    rep.set("channel", describe(cfg.channel));
    rep.set("seed", std::to_string(cfg.channel.seed));
    rep.set("payload_bytes", encoded.payload_bytes);
    rep.set("wire_bytes", encoded.bytes.size());
    report_outcome(rep, rx, &img);
    write_text(join(cfg.output, "report.txt"), rep.str());
    out << rep.str();
    return rx.clean() ? 0 : 2;
}

int cmd_send(const RunConfig& cfg, std::ostream& out) {
    const Image img = read_pgm_file(cfg.input);
    const auto encoded = encode_image(img, stream_info(cfg, img));
    write_file(cfg.output, encoded.bytes);
    out << "packets=" << encoded.packets.size() << "\n"
              << "payload_bytes=" << encoded.payload_bytes << "\n"
              << "wire_bytes=" << encoded.bytes.size() << "\n";
    return 0;
}

int cmd_corrupt(const RunConfig& cfg, std::ostream& out) {
    const auto bytes = read_file(cfg.input);
    const auto noisy = transmit_bytes(bytes, cfg.channel);
    write_file(cfg.output, noisy);
    std::size_t flipped = 0;
    for (std::size_t i = 0; i < bytes.size(); ++i)
        flipped += static_cast<std::size_t>(std::popcount(static_cast<std::uint8_t>(bytes[i] ^ noisy[i])));
    out << "channel=" << describe(cfg.channel) << "\n"
              << "bits=" << bytes.size() * 8 << "\n"
              << "flipped=" << flipped << "\n";
    return 0;
}

int cmd_receive(const RunConfig& cfg, std::ostream& out) {
    const auto rx = receive_stream(read_file(cfg.input));
    ensure_dir(cfg.output);
    write_pgm_file(join(cfg.output, "reconstructed.pgm"), rx.image);
    write_stages(cfg.output, rx);

    Report rep;
    rep.set("width", static_cast<std::size_t>(rx.info.width));
    rep.set("height", static_cast<std::size_t>(rx.info.height));
    rep.set("code", rx.info.code.name());
    Image reference;
    if (!cfg.reference.empty()) reference = read_pgm_file(cfg.reference);
    report_outcome(rep, rx, cfg.reference.empty() ? nullptr : &reference);
    write_text(join(cfg.output, "report.txt"), rep.str());
    out << rep.str();
    return rx.clean() ? 0 : 2;
}

}  // namespace wavecast::app
