#pragma once

#include "devlearn/machines.hpp"
#include "devlearn/types.hpp"

#include <array>
#include <string>

namespace devlearn {

// Fixed layout of the 22-value UART output vector:
//   [0..4]   parity one-hot        (None, Odd, Even, High, Low)
//   [5..8]   word length one-hot   (5, 6, 7, 8)
//   [9..11]  stop bits one-hot     (1, 1.5, 2)
//   [12]     baud / 115200
//   [13]     tx flag
//   [14..21] data byte, big-endian bits
enum class OutputGroup { Parity, WordLength, StopBits, Baud, Tx, Data, Bits };

struct GroupSlice {
  int offset;
  int width;
};

inline constexpr std::array<OutputGroup, 6> kUartGroups = {
    OutputGroup::Parity, OutputGroup::WordLength, OutputGroup::StopBits,
    OutputGroup::Baud,   OutputGroup::Tx,         OutputGroup::Data};

GroupSlice uart_group_slice(OutputGroup group);
std::string to_string(OutputGroup group);
OutputGroup output_group_from_string(const std::string& name);

// command encodings
Eigen::RowVectorXf encode_simple_command(const SimpleCommand& cmd);  // width 9
Eigen::RowVectorXf encode_uart_command(const UartCommand& cmd);      // width 12
Eigen::RowVectorXf encode_command(const Command& cmd);

// output encodings
Eigen::RowVectorXf encode_bit_output(const BitOutput& out);
Eigen::RowVectorXf encode_uart_output(const UartOutputFrame& frame);  // width 22
Eigen::RowVectorXf encode_output(const OutputFrame& frame);

// Decoders are total over arbitrary real-valued vectors: one-hot groups take
// the argmax (lowest index wins ties), flags and bits threshold at 0.5, and
// the baud value is clamped into [0, 115200] before rounding.
BitOutput decode_simple_output(const Eigen::Ref<const Eigen::RowVectorXf>& raw,
                               int width);
UartOutputFrame decode_uart_output(const Eigen::Ref<const Eigen::RowVectorXf>& raw);

// Baud as the model actually predicted it, without clamping. Mimicry scoring
// and report tables use this so out-of-range predictions stay visible.
long decode_uart_baud_raw(const Eigen::Ref<const Eigen::RowVectorXf>& raw);

SimpleCommand decode_simple_command(const Eigen::Ref<const Eigen::RowVectorXf>& raw);
UartCommand decode_uart_command(const Eigen::Ref<const Eigen::RowVectorXf>& raw);

// Lowest-index argmax over a contiguous slice.
int argmax_lowest(const Eigen::Ref<const Eigen::RowVectorXf>& values);

}  // namespace devlearn
