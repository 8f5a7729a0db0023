#include "devlearn/dataset.hpp"

#include "devlearn/encoding.hpp"
#include "devlearn/rng.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

namespace devlearn {

std::string to_string(Split split) {
  switch (split) {
    case Split::Train:
      return "train";
    case Split::Validation:
      return "validation";
    case Split::Evaluation:
      return "evaluation";
  }
  throw ConfigError("unknown split");
}

Split split_from_string(const std::string& name) {
  if (name == "train") return Split::Train;
  if (name == "validation") return Split::Validation;
  if (name == "evaluation") return Split::Evaluation;
  throw RejectedInput("unknown split: " + name);
}

Command draw_command(MachineKind kind, Rng& rng) {
  if (is_simple(kind)) {
    const auto u = rng.index(16);
    SimpleCommand cmd;
    cmd.action = (u >> 3) ? SimpleAction::Set : SimpleAction::Clear;
    cmd.index = static_cast<int>(u & 7);
    return cmd;
  }
  const auto u = rng.index(4096);
  UartCommand cmd;
  cmd.op = (u >> 11) ? UartOp::Write : UartOp::Read;
  cmd.reg = static_cast<int>((u >> 8) & 7);
  cmd.data = static_cast<int>(u & 0xFF);
  return cmd;
}

namespace {

SequencePair generate_sequence(MachineKind kind, int length, std::uint64_t seq_seed) {
  Rng rng(seq_seed);
  std::vector<Command> commands(length);
  for (auto& c : commands) c = draw_command(kind, rng);

  const auto outputs = run_sequence(kind, commands);

  SequencePair pair;
  pair.inputs.resize(length, input_width(kind));
  pair.targets.resize(length, output_width(kind));
  for (int t = 0; t < length; ++t) {
    pair.inputs.row(t) = encode_command(commands[t]);
    pair.targets.row(t) = encode_output(outputs[t]);
  }
  return pair;
}

}  // namespace

Dataset generate(MachineKind kind, int n_sequences, int length,
                 std::uint64_t seed, Split split) {
  if (n_sequences < 1) throw ConfigError("generate: need at least one sequence");
  if (length < 1) throw ConfigError("generate: need at least one command per sequence");

  Dataset ds;
  ds.kind = kind;
  ds.split = split;
  ds.seed = seed;
  ds.sequence_length = length;
  ds.sequences.reserve(n_sequences);
  for (int i = 0; i < n_sequences; ++i)
    ds.sequences.push_back(generate_sequence(kind, length, mix64(seed, i)));
  return ds;
}

DatasetPreset paper_preset() { return {4096, 1024, 128, 1024}; }
DatasetPreset desk_preset() { return {256, 64, 32, 64}; }

DatasetPreset preset_from_string(const std::string& name) {
  if (name == "paper") return paper_preset();
  if (name == "desk") return desk_preset();
  throw RejectedInput("unknown preset: " + name);
}

namespace {

void write_row_le(std::ostream& os, const EncodedSequence& m) {
  static_assert(std::endian::native == std::endian::little,
                "big-endian hosts need byte swaps here");
  // row-major matrix, so the whole block is already in row-major step order
  os.write(reinterpret_cast<const char*>(m.data()),
           static_cast<std::streamsize>(sizeof(float)) * m.size());
}

void read_row_le(std::istream& is, EncodedSequence& m) {
  is.read(reinterpret_cast<char*>(m.data()),
          static_cast<std::streamsize>(sizeof(float)) * m.size());
}

std::string header_line(const Dataset& ds, int n, int in_w, int out_w) {
  std::ostringstream os;
  os << "devlearn-dataset v1 kind=" << to_string(ds.kind)
     << " split=" << to_string(ds.split) << " sequences=" << n
     << " length=" << ds.sequence_length << " input_width=" << in_w
     << " output_width=" << out_w << " seed=" << ds.seed;
  return os.str();
}

std::uint64_t parse_u64(const std::string& value, const std::string& key) {
  try {
    size_t pos = 0;
    const std::uint64_t v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw FormatError(FormatError::Kind::Header,
                      "dataset header: bad value for " + key);
  }
}

}  // namespace

void save(const Dataset& dataset, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open for writing: " + path);

  os << header_line(dataset, dataset.size(), dataset.input_width(),
                    dataset.output_width())
     << '\n';
  for (const SequencePair& p : dataset.sequences) {
    write_row_le(os, p.inputs);
    write_row_le(os, p.targets);
  }
  if (!os) throw IoError("write failed: " + path);
}

void generate_to_file(MachineKind kind, int n_sequences, int length,
                      std::uint64_t seed, Split split, const std::string& path) {
  if (n_sequences < 1) throw ConfigError("generate: need at least one sequence");
  if (length < 1) throw ConfigError("generate: need at least one command per sequence");

  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open for writing: " + path);

  Dataset meta;
  meta.kind = kind;
  meta.split = split;
  meta.seed = seed;
  meta.sequence_length = length;
  os << header_line(meta, n_sequences, input_width(kind), output_width(kind))
     << '\n';
  for (int i = 0; i < n_sequences; ++i) {
    const SequencePair p = generate_sequence(kind, length, mix64(seed, i));
    write_row_le(os, p.inputs);
    write_row_le(os, p.targets);
  }
  if (!os) throw IoError("write failed: " + path);
}

Dataset load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open for reading: " + path);

  std::string header;
  if (!std::getline(is, header))
    throw FormatError(FormatError::Kind::Truncated, "dataset file is empty: " + path);

  std::istringstream hs(header);
  std::string magic, version;
  hs >> magic >> version;
  if (magic != "devlearn-dataset")
    throw FormatError(FormatError::Kind::Magic, "not a dataset file: " + path);
  if (version != "v1")
    throw FormatError(FormatError::Kind::Version,
                      "unsupported dataset version '" + version + "': " + path);

  std::string kind_s, split_s;
  std::uint64_t seed = 0;
  long n = -1, length = -1, in_w = -1, out_w = -1;
  std::string token;
  while (hs >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos)
      throw FormatError(FormatError::Kind::Header, "dataset header: bad token " + token);
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    if (key == "kind")
      kind_s = value;
    else if (key == "split")
      split_s = value;
    else if (key == "sequences")
      n = static_cast<long>(parse_u64(value, key));
    else if (key == "length")
      length = static_cast<long>(parse_u64(value, key));
    else if (key == "input_width")
      in_w = static_cast<long>(parse_u64(value, key));
    else if (key == "output_width")
      out_w = static_cast<long>(parse_u64(value, key));
    else if (key == "seed")
      seed = parse_u64(value, key);
    else
      throw FormatError(FormatError::Kind::Header, "dataset header: unknown key " + key);
  }
  if (kind_s.empty() || split_s.empty() || n < 0 || length < 1 || in_w < 1 || out_w < 1)
    throw FormatError(FormatError::Kind::Header, "dataset header: missing fields");

  Dataset ds;
  try {
    ds.kind = machine_kind_from_string(kind_s);
    ds.split = split_from_string(split_s);
  } catch (const RejectedInput& e) {
    throw FormatError(FormatError::Kind::Header, e.what());
  }
  if (in_w != input_width(ds.kind) || out_w != output_width(ds.kind))
    throw FormatError(FormatError::Kind::Width,
                      "dataset header widths do not match machine " + kind_s);
  ds.seed = seed;
  ds.sequence_length = static_cast<int>(length);

  ds.sequences.resize(n);
  for (SequencePair& p : ds.sequences) {
    p.inputs.resize(length, in_w);
    p.targets.resize(length, out_w);
    read_row_le(is, p.inputs);
    read_row_le(is, p.targets);
    if (!is)
      throw FormatError(FormatError::Kind::Truncated, "dataset payload truncated: " + path);
  }
  if (is.peek() != std::char_traits<char>::eof())
    throw FormatError(FormatError::Kind::Trailing, "trailing bytes after payload: " + path);
  return ds;
}

void export_csv(const Dataset& dataset, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open for writing: " + path);

  os << "sequence,step";
  for (int j = 0; j < dataset.input_width(); ++j) os << ",in_" << j;
  for (int j = 0; j < dataset.output_width(); ++j) os << ",target_" << j;
  os << '\n';

  char buf[64];
  for (int i = 0; i < dataset.size(); ++i) {
    const SequencePair& p = dataset.sequences[i];
    for (int t = 0; t < p.inputs.rows(); ++t) {
      os << i << ',' << t;
      for (int j = 0; j < p.inputs.cols(); ++j) {
        std::snprintf(buf, sizeof buf, "%.9g", static_cast<double>(p.inputs(t, j)));
        os << ',' << buf;
      }
      for (int j = 0; j < p.targets.cols(); ++j) {
        std::snprintf(buf, sizeof buf, "%.9g", static_cast<double>(p.targets(t, j)));
        os << ',' << buf;
      }
      os << '\n';
    }
  }
  if (!os) throw IoError("write failed: " + path);
}

std::uint64_t file_checksum(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open for reading: " + path);
  std::uint64_t h = 0xcbf29ce484222325ull;
  char chunk[1 << 16];
  while (is.read(chunk, sizeof chunk) || is.gcount() > 0) {
    const std::streamsize got = is.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      h ^= static_cast<unsigned char>(chunk[i]);
      h *= 0x100000001b3ull;
    }
    if (!is) break;
  }
  return h;
}

}  // namespace devlearn
