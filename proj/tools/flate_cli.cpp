// flate: compress, decompress and inspect Deflate streams.

#include <CLI11.hpp>

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "flate/flate.hpp"

namespace {

namespace fs = std::filesystem;

enum class Format { Raw, Gzip };
enum class WindowImpl { Queue, Ring };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::uint8_t> read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::cin >> std::noskipws;
    std::ios::sync_with_stdio(false);
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_output(const std::string& path, std::span<const std::uint8_t> bytes) {
  if (path.empty() || path == "-") {
    std::cout.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    std::cout.flush();
    if (!std::cout) throw IoError("write to standard output failed");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write to " + path + " failed");
}

bool is_stream(const std::string& p) { return p.empty() || p == "-"; }

void check_distinct(const std::string& in, const std::string& out) {
  if (is_stream(in) || is_stream(out)) return;
  std::error_code ec;
  const bool same = fs::exists(out, ec) ? fs::equivalent(in, out, ec)
                                        : fs::weakly_canonical(in, ec) == fs::weakly_canonical(out, ec);
  if (same) throw UsageError("input and output must be different files");
}

std::vector<std::uint8_t> decompress(std::span<const std::uint8_t> in, Format f, WindowImpl w) {
  if (f == Format::Gzip) {
    auto r = w == WindowImpl::Queue ? flate::gunzip<flate::QueueWindow>(in) : flate::gunzip<flate::RingWindow>(in);
    if (r.trailing_bytes) std::cerr << "flate: warning: ignored " << r.trailing_bytes << " trailing bytes\n";
    return std::move(r.bytes);
  }
  return w == WindowImpl::Queue ? flate::inflate<flate::QueueWindow>(in) : flate::inflate<flate::RingWindow>(in);
}

std::vector<std::uint8_t> parse_lengths(const std::string& list) {
  std::vector<std::uint8_t> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &used);
    } catch (const std::exception&) {
      throw UsageError("bad length '" + item + "'");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size() || v > 255) throw UsageError("bad length '" + item + "'");
    out.push_back(static_cast<std::uint8_t>(v));
  }
  return out;
}

void dump_coding(const std::string& list, std::ostream& os) {
  auto l = flate::CodeLengths::make(parse_lengths(list));
  if (!l) throw UsageError("lengths above 15 are not allowed");
  const auto coding = flate::try_build_coding(*l);
  if (!coding) throw UsageError("lengths oversubscribe the code space");
  for (std::size_t s = 0; s < coding->size(); ++s) {
    const auto& c = (*coding)[s];
    os << s << ' ' << c.length() << ' ' << (c.empty() ? "-" : c.to_string()) << '\n';
  }
}

std::string describe(const flate::Token& t) {
  switch (t.kind) {
    case flate::Token::Kind::Literal:
      if (t.byte >= 0x20 && t.byte < 0x7F && t.byte != '\'') return std::string("'") + char(t.byte) + "'";
      {
        char buf[8];
        std::snprintf(buf, sizeof buf, "0x%02x", t.byte);
        return buf;
      }
    case flate::Token::Kind::BackRef:
      return "<" + std::to_string(t.length) + "," + std::to_string(t.distance) + ">";
    case flate::Token::Kind::EndOfBlock:
      break;
  }
  return "end";
}

void dump_tokens(std::span<const std::uint8_t> in, Format f, std::ostream& os) {
  std::size_t header_bits = 0;
  if (f == Format::Gzip) {
    const auto h = flate::gzip_header_size(in);
    if (!h) throw flate::Error(h.error(), 0);
    header_bits = *h * 8;
    in = in.subspan(*h);
  }
  auto blocks = flate::inflate_tokens(in);
  if (!blocks) throw flate::Error(blocks.failure().reason, blocks.failure().bit_offset + header_bits);
  static constexpr const char* kTypes[] = {"stored", "static", "dynamic"};
  for (const auto& b : blocks.value()) {
    os << "block " << kTypes[static_cast<int>(b.header.type)] << (b.header.is_final ? " final" : "") << " at bit "
       << b.bit_offset + header_bits << '\n';
    if (b.header.type == flate::BlockType::Stored) {
      os << "  stored " << b.stored.size() << " bytes\n";
      continue;
    }
    std::string line;
    for (const auto& t : b.tokens) {
      const auto d = describe(t);
      if (!line.empty() && line.size() + d.size() > 76) {
        os << " " << line << '\n';
        line.clear();
      }
      line += ' ';
      line += d;
    }
    if (!line.empty()) os << " " << line << '\n';
  }
  os << "end of stream at bit " << blocks.consumed_bits() + header_bits << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deflate/gzip codec"};
  app.require_subcommand(1);

  const std::map<std::string, Format> formats{{"raw", Format::Raw}, {"gzip", Format::Gzip}};
  const std::map<std::string, WindowImpl> windows{{"queue", WindowImpl::Queue}, {"ring", WindowImpl::Ring}};

  std::string input;
  std::string output;
  Format format = Format::Gzip;
  WindowImpl window = WindowImpl::Ring;
  flate::CompressParams params;
  std::string lengths;

  auto* compress = app.add_subcommand("compress", "Compress a file (default: gzip member)");
  auto* decompress_cmd = app.add_subcommand("decompress", "Decompress a file");
  auto* dump_coding_cmd = app.add_subcommand("dump-coding", "Print the coding for comma-separated code lengths");
  auto* dump_tokens_cmd = app.add_subcommand("dump-tokens", "Print the blocks and tokens of a compressed stream");

  for (auto* sub : {compress, decompress_cmd, dump_tokens_cmd}) {
    sub->add_option("input", input, "Input file, '-' or omitted for standard input");
    sub->add_option("--format", format, "raw or gzip")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  }
  for (auto* sub : {compress, decompress_cmd}) {
    sub->add_option("-o,--output", output, "Output file, '-' or omitted for standard output");
  }
  decompress_cmd->add_option("--window-impl", window, "History window: queue or ring")
      ->transform(CLI::CheckedTransformer(windows, CLI::ignore_case));
  compress->add_option("--max-chain", params.max_chain, "Match candidates examined per position")
      ->check(CLI::Range(1u, 1u << 20));
  compress->add_option("--block-limit", params.block_payload_limit, "Input bytes per block")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 40));
  dump_coding_cmd->add_option("lengths", lengths, "Code lengths, e.g. 2,1,3,3,0")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (dump_coding_cmd->parsed()) {
      dump_coding(lengths, std::cout);
      return 0;
    }
    if (dump_tokens_cmd->parsed()) {
      if (dump_tokens_cmd->get_option("--format")->count() == 0) format = Format::Raw;
      const auto in = read_input(input);
      dump_tokens(in, format, std::cout);
      return 0;
    }
    check_distinct(input, output);
    const auto in = read_input(input);
    if (compress->parsed()) {
      params.validate();
      auto z = format == Format::Gzip ? flate::gzip_compress(in, params) : flate::deflate(in, params);
      write_output(output, z);
    } else {
      write_output(output, decompress(in, format, window));
    }
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "flate: " << e.what() << '\n';
    return 2;
  } catch (const flate::Error& e) {
    std::cerr << "flate: error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "flate: " << e.what() << '\n';
    return 1;
  }
}
