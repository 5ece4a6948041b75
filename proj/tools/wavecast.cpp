// wavecast: progressive wavelet image transmission with Hamming FEC.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "wavecast/app.hpp"

using namespace wavecast;

namespace {

struct Flags {
    app::RunConfig cfg;
    std::string q;
    std::string code = "secded-8-4";
    std::string channel = "none";
    double p = 0.0;
    double burst_rate = 0.0;
    int burst_len = 8;
    std::uint64_t seed = 1;
};

void add_geometry(CLI::App* cmd, Flags& f) {
    cmd->add_option("--block-size", f.cfg.block_size, "Block side in pixels (multiple of 8)")
        ->check(CLI::Range(8, 120))
        ->capture_default_str();
    cmd->add_option("--levels", f.cfg.levels, "Wavelet decomposition depth")
        ->check(CLI::Range(1, kMaxLevels))
        ->capture_default_str();
}

void add_coding(CLI::App* cmd, Flags& f) {
    cmd->add_option("--q", f.q, "Quantizer steps qLL,qL,...,q1 (default all 1, lossless)");
    cmd->add_option("--code", f.code, "Payload code")
        ->check(CLI::IsMember({"secded-8-4", "hamming-7-4"}))
        ->capture_default_str();
    cmd->add_option("--image-id", f.cfg.image_id, "16-bit stream tag")->capture_default_str();
}

void add_channel(CLI::App* cmd, Flags& f) {
    cmd->add_option("--channel", f.channel, "Noise model")
        ->check(CLI::IsMember({"none", "bsc", "burst"}))
        ->capture_default_str();
    cmd->add_option("--p", f.p, "BSC flip probability")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--burst-rate", f.burst_rate, "Burst starts per bit")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--burst-len", f.burst_len, "Bits flipped per burst")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--seed", f.seed, "Channel seed")->capture_default_str();
}

// Resolves string flags into the run configuration; throws on bad combinations.
void finalize(Flags& f) {
    if (f.cfg.block_size % 8 != 0) throw CLI::ValidationError("--block-size", "must be a multiple of 8");
    if (f.cfg.block_size % (1 << f.cfg.levels) != 0)
        throw CLI::ValidationError("--block-size", "must be divisible by 2^levels");
    try {
        if (!f.q.empty()) f.cfg.qtable = QTable::parse(f.q, f.cfg.levels);
    } catch (const std::invalid_argument& e) {
        throw CLI::ValidationError("--q", e.what());
    }
    f.cfg.code = HammingCode::from_name(f.code);
    if (f.channel == "bsc")
        f.cfg.channel = ChannelModel::bsc(f.p, f.seed);
    else if (f.channel == "burst")
        f.cfg.channel = ChannelModel::burst(f.burst_rate, f.burst_len, f.seed);
    else
        f.cfg.channel = ChannelModel::bsc(0.0, f.seed);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App cli{"Progressive Haar-wavelet image transmission with Hamming error correction"};
    cli.require_subcommand(1);
    Flags f;

    auto* transform = cli.add_subcommand("transform", "Write row-pass, column-pass and pyramid snapshots");
    transform->add_option("-i,--input", f.cfg.input, "Input PGM")->required()->check(CLI::ExistingFile);
    transform->add_option("-o,--output", f.cfg.output, "Output directory")->required();
    add_geometry(transform, f);

    auto* roundtrip = cli.add_subcommand("roundtrip", "Encode, transmit over a noisy channel, and reconstruct");
    roundtrip->add_option("-i,--input", f.cfg.input, "Input PGM")->required()->check(CLI::ExistingFile);
    roundtrip->add_option("-o,--output", f.cfg.output, "Output directory")->required();
    add_geometry(roundtrip, f);
    add_coding(roundtrip, f);
    add_channel(roundtrip, f);

    auto* send = cli.add_subcommand("send", "Encode an image into a packet stream file");
    send->add_option("-i,--input", f.cfg.input, "Input PGM")->required()->check(CLI::ExistingFile);
    send->add_option("-o,--output", f.cfg.output, "Stream file")->required();
    add_geometry(send, f);
    add_coding(send, f);

    auto* corrupt = cli.add_subcommand("corrupt", "Pass a stream file through the channel model");
    corrupt->add_option("-i,--input", f.cfg.input, "Stream file")->required()->check(CLI::ExistingFile);
    corrupt->add_option("-o,--output", f.cfg.output, "Corrupted stream file")->required();
    add_channel(corrupt, f);

    auto* receive = cli.add_subcommand("receive", "Reconstruct an image from a stream file");
    receive->add_option("-i,--input", f.cfg.input, "Stream file")->required()->check(CLI::ExistingFile);
    receive->add_option("-o,--output", f.cfg.output, "Output directory")->required();
    receive->add_option("--reference", f.cfg.reference, "Original image for mse/psnr")->check(CLI::ExistingFile);

    try {
        cli.parse(argc, argv);
        finalize(f);
    } catch (const CLI::ParseError& e) {
        return cli.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (*transform) return app::cmd_transform(f.cfg, std::cout);
        if (*roundtrip) return app::cmd_roundtrip(f.cfg, std::cout);
        if (*send) return app::cmd_send(f.cfg, std::cout);
        if (*corrupt) return app::cmd_corrupt(f.cfg, std::cout);
        if (*receive) return app::cmd_receive(f.cfg, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
