#include "devlearn/encoding.hpp"

#include <cmath>

namespace devlearn {

namespace {

float bit(int value, int msb_distance) {
  return static_cast<float>((value >> msb_distance) & 1);
}

bool on(float v) { return v >= 0.5f; }

}  // namespace

GroupSlice uart_group_slice(OutputGroup group) {
  switch (group) {
    case OutputGroup::Parity:
      return {0, 5};
    case OutputGroup::WordLength:
      return {5, 4};
    case OutputGroup::StopBits:
      return {9, 3};
    case OutputGroup::Baud:
      return {12, 1};
    case OutputGroup::Tx:
      return {13, 1};
    case OutputGroup::Data:
      return {14, 8};
    case OutputGroup::Bits:
      break;
  }
  throw ConfigError("no UART slice for this output group");
}

std::string to_string(OutputGroup group) {
  switch (group) {
    case OutputGroup::Parity:
      return "parity";
    case OutputGroup::WordLength:
      return "word_length";
    case OutputGroup::StopBits:
      return "stop_bits";
    case OutputGroup::Baud:
      return "baud";
    case OutputGroup::Tx:
      return "tx";
    case OutputGroup::Data:
      return "data";
    case OutputGroup::Bits:
      return "bits";
  }
  throw ConfigError("unknown output group");
}

OutputGroup output_group_from_string(const std::string& name) {
  for (OutputGroup g : kUartGroups)
    if (to_string(g) == name) return g;
  if (name == "bits") return OutputGroup::Bits;
  throw RejectedInput("unknown output group: " + name);
}

Eigen::RowVectorXf encode_simple_command(const SimpleCommand& cmd) {
  if (cmd.index < 0 || cmd.index > 7)
    throw RejectedInput("encode_simple_command: latch index out of range");
  Eigen::RowVectorXf v = Eigen::RowVectorXf::Zero(9);
  v(0) = cmd.action == SimpleAction::Set ? 1.0f : 0.0f;
  v(1 + cmd.index) = 1.0f;
  return v;
}

Eigen::RowVectorXf encode_uart_command(const UartCommand& cmd) {
  if (cmd.reg < 0 || cmd.reg > 7)
    throw RejectedInput("encode_uart_command: register offset out of range");
  if (cmd.data < 0 || cmd.data > 255)
    throw RejectedInput("encode_uart_command: data byte out of range");
  Eigen::RowVectorXf v = Eigen::RowVectorXf::Zero(12);
  v(0) = cmd.op == UartOp::Write ? 1.0f : 0.0f;
  for (int i = 0; i < 3; ++i) v(1 + i) = bit(cmd.reg, 2 - i);
  if (cmd.op == UartOp::Write) {
    for (int i = 0; i < 8; ++i) v(4 + i) = bit(cmd.data, 7 - i);
  }
  return v;
}

Eigen::RowVectorXf encode_command(const Command& cmd) {
  if (const auto* simple = std::get_if<SimpleCommand>(&cmd))
    return encode_simple_command(*simple);
  return encode_uart_command(std::get<UartCommand>(cmd));
}

Eigen::RowVectorXf encode_bit_output(const BitOutput& out) {
  Eigen::RowVectorXf v(out.width);
  for (int i = 0; i < out.width; ++i) v(i) = static_cast<float>(out.bits[i]);
  return v;
}

Eigen::RowVectorXf encode_uart_output(const UartOutputFrame& frame) {
  if (frame.baud < 0 || frame.baud > kMaxBaud)
    throw RejectedInput("encode_uart_output: baud outside [0, 115200]");
  if (frame.word_length < 5 || frame.word_length > 8)
    throw RejectedInput("encode_uart_output: word length outside [5, 8]");
  if (frame.data < 0 || frame.data > 255)
    throw RejectedInput("encode_uart_output: data byte out of range");

  Eigen::RowVectorXf v = Eigen::RowVectorXf::Zero(22);
  v(static_cast<int>(frame.parity)) = 1.0f;
  v(5 + frame.word_length - 5) = 1.0f;
  v(9 + static_cast<int>(frame.stop_bits)) = 1.0f;
  v(12) = static_cast<float>(static_cast<double>(frame.baud) / kMaxBaud);
  v(13) = frame.tx ? 1.0f : 0.0f;
  for (int i = 0; i < 8; ++i) v(14 + i) = bit(frame.data, 7 - i);
  return v;
}

Eigen::RowVectorXf encode_output(const OutputFrame& frame) {
  if (const auto* bits = std::get_if<BitOutput>(&frame))
    return encode_bit_output(*bits);
  return encode_uart_output(std::get<UartOutputFrame>(frame));
}

int argmax_lowest(const Eigen::Ref<const Eigen::RowVectorXf>& values) {
  int best = 0;
  for (int i = 1; i < values.size(); ++i)
    if (values(i) > values(best)) best = i;
  return best;
}

BitOutput decode_simple_output(const Eigen::Ref<const Eigen::RowVectorXf>& raw,
                               int width) {
  if (width < 1 || width > 8 || raw.size() != width)
    throw ShapeError("decode_simple_output: width mismatch");
  BitOutput out;
  out.width = width;
  for (int i = 0; i < width; ++i) out.bits[i] = on(raw(i)) ? 1 : 0;
  return out;
}

UartOutputFrame decode_uart_output(const Eigen::Ref<const Eigen::RowVectorXf>& raw) {
  if (raw.size() != 22) throw ShapeError("decode_uart_output: expected 22 values");

  UartOutputFrame f;
  f.parity = static_cast<Parity>(argmax_lowest(raw.segment(0, 5)));
  f.word_length = 5 + argmax_lowest(raw.segment(5, 4));
  f.stop_bits = static_cast<StopBits>(argmax_lowest(raw.segment(9, 3)));

  const double clamped = std::clamp(static_cast<double>(raw(12)), 0.0, 1.0);
  f.baud = std::lround(clamped * kMaxBaud);

  f.tx = on(raw(13));
  int data = 0;
  for (int i = 0; i < 8; ++i) data = (data << 1) | (on(raw(14 + i)) ? 1 : 0);
  f.data = data;
  return f;
}

long decode_uart_baud_raw(const Eigen::Ref<const Eigen::RowVectorXf>& raw) {
  if (raw.size() != 22) throw ShapeError("decode_uart_baud_raw: expected 22 values");
  return std::lround(static_cast<double>(raw(12)) * kMaxBaud);
}

SimpleCommand decode_simple_command(const Eigen::Ref<const Eigen::RowVectorXf>& raw) {
  if (raw.size() != 9) throw ShapeError("decode_simple_command: expected 9 values");
  SimpleCommand cmd;
  cmd.action = on(raw(0)) ? SimpleAction::Set : SimpleAction::Clear;
  cmd.index = argmax_lowest(raw.segment(1, 8));
  return cmd;
}

UartCommand decode_uart_command(const Eigen::Ref<const Eigen::RowVectorXf>& raw) {
  if (raw.size() != 12) throw ShapeError("decode_uart_command: expected 12 values");
  UartCommand cmd;
  cmd.op = on(raw(0)) ? UartOp::Write : UartOp::Read;
  int reg = 0;
  for (int i = 0; i < 3; ++i) reg = (reg << 1) | (on(raw(1 + i)) ? 1 : 0);
  cmd.reg = reg;
  int data = 0;
  for (int i = 0; i < 8; ++i) data = (data << 1) | (on(raw(4 + i)) ? 1 : 0);
  cmd.data = data;
  return cmd;
}

}  // namespace devlearn
