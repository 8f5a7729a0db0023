#include "devlearn/gru.hpp"

#include <bit>
#include <fstream>
#include <sstream>

namespace devlearn {

void save_checkpoint(const GruNetwork<float>& net, std::uint64_t step,
                     const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open for writing: " + path);

  const NetworkConfig& c = net.config;
  os << "devlearn-checkpoint v1 input_width=" << c.input_width
     << " output_width=" << c.output_width
     << " hidden_layers=" << c.hidden_layers
     << " hidden_width=" << c.resolved_hidden_width() << " seed=" << c.seed
     << " step=" << step << '\n';

  static_assert(std::endian::native == std::endian::little,
                "big-endian hosts need byte swaps here");
  auto& mutable_net = const_cast<GruNetwork<float>&>(net);  // read-only use
  for (const auto& block : parameter_blocks(mutable_net))
    os.write(reinterpret_cast<const char*>(block.data),
             static_cast<std::streamsize>(sizeof(float)) * block.size);
  if (!os) throw IoError("write failed: " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open for reading: " + path);

  std::string header;
  if (!std::getline(is, header))
    throw FormatError(FormatError::Kind::Truncated, "checkpoint file is empty: " + path);

  std::istringstream hs(header);
  std::string magic, version;
  hs >> magic >> version;
  if (magic != "devlearn-checkpoint")
    throw FormatError(FormatError::Kind::Magic, "not a checkpoint file: " + path);
  if (version != "v1")
    throw FormatError(FormatError::Kind::Version,
                      "unsupported checkpoint version '" + version + "': " + path);

  NetworkConfig config;
  std::uint64_t step = 0;
  std::string token;
  while (hs >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos)
      throw FormatError(FormatError::Kind::Header, "checkpoint header: bad token " + token);
    const std::string key = token.substr(0, eq);
    std::uint64_t value = 0;
    try {
      size_t pos = 0;
      value = std::stoull(token.substr(eq + 1), &pos);
      if (pos != token.size() - eq - 1) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw FormatError(FormatError::Kind::Header,
                        "checkpoint header: bad value for " + key);
    }
    if (key == "input_width")
      config.input_width = static_cast<int>(value);
    else if (key == "output_width")
      config.output_width = static_cast<int>(value);
    else if (key == "hidden_layers")
      config.hidden_layers = static_cast<int>(value);
    else if (key == "hidden_width")
      config.hidden_width = static_cast<int>(value);
    else if (key == "seed")
      config.seed = value;
    else if (key == "step")
      step = value;
    else
      throw FormatError(FormatError::Kind::Header, "checkpoint header: unknown key " + key);
  }
  try {
    config.validate();
  } catch (const ConfigError& e) {
    throw FormatError(FormatError::Kind::Header, e.what());
  }
  if (config.hidden_width == 0)
    throw FormatError(FormatError::Kind::Header, "checkpoint header: missing hidden_width");

  Checkpoint ckpt;
  ckpt.step = step;
  ckpt.net = zero_network<float>(config);
  for (auto& block : parameter_blocks(ckpt.net)) {
    is.read(reinterpret_cast<char*>(block.data),
            static_cast<std::streamsize>(sizeof(float)) * block.size);
    if (!is)
      throw FormatError(FormatError::Kind::Truncated,
                        "checkpoint payload truncated at " + block.name + ": " + path);
  }
  if (is.peek() != std::char_traits<char>::eof())
    throw FormatError(FormatError::Kind::Trailing, "trailing bytes after payload: " + path);
  return ckpt;
}

}  // namespace devlearn
