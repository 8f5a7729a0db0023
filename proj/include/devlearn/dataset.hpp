#pragma once

#include "devlearn/machines.hpp"
#include "devlearn/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace devlearn {

enum class Split { Train, Validation, Evaluation };

std::string to_string(Split split);
Split split_from_string(const std::string& name);

struct SequencePair {
  EncodedSequence inputs;   // time x input_width
  EncodedSequence targets;  // time x output_width
};

// Observation dataset: uniformly random command sequences paired with the
// machine's encoded outputs. Regenerating with the same (kind, counts,
// length, seed) yields bit-identical data; see generate() for the exact
// derivation.
struct Dataset {
  MachineKind kind = MachineKind::EightBit;
  Split split = Split::Train;
  std::uint64_t seed = 0;
  int sequence_length = 0;
  std::vector<SequencePair> sequences;

  int size() const { return static_cast<int>(sequences.size()); }
  int input_width() const {
    return sequences.empty() ? 0 : static_cast<int>(sequences.front().inputs.cols());
  }
  int output_width() const {
    return sequences.empty() ? 0 : static_cast<int>(sequences.front().targets.cols());
  }
};

// Command draws: sequence i uses Rng(mix64(seed, i)). Each draw takes one
// 64-bit output u and maps it over the machine's command space:
//   simple machines  u % 16   -> action = bit 3, latch index = bits 0..2
//   UART             u % 4096 -> op = bit 11, register = bits 8..10,
//                                data = bits 0..7
// Both spaces are powers of two, so the mapping is exactly uniform.
Dataset generate(MachineKind kind, int n_sequences, int length,
                 std::uint64_t seed, Split split = Split::Train);

// Draws one command for `kind` from the generator (same mapping as above).
Command draw_command(MachineKind kind, class Rng& rng);

struct DatasetPreset {
  int train_sequences;
  int validation_sequences;
  int evaluation_sequences;
  int sequence_length;
};

// paper: 4096/1024/128 sequences of 1024 commands; desk: 256/64/32 of 64,
// sized so the whole pipeline runs in seconds.
DatasetPreset paper_preset();
DatasetPreset desk_preset();
DatasetPreset preset_from_string(const std::string& name);

// File format, version 1: one text header line
//   devlearn-dataset v1 kind=<k> split=<s> sequences=<n> length=<l>
//     input_width=<i> output_width=<o> seed=<u64>
// followed by the payload: for each sequence, inputs then targets, row-major
// float32, little-endian. load(save(d)) is bit-identical to d.
void save(const Dataset& dataset, const std::string& path);
Dataset load(const std::string& path);

// Streaming generate-and-save; never holds more than one sequence in memory.
// Produces bytes identical to save(generate(...)).
void generate_to_file(MachineKind kind, int n_sequences, int length,
                      std::uint64_t seed, Split split, const std::string& path);

// One row per time step: sequence, step, in_0.., target_0..
void export_csv(const Dataset& dataset, const std::string& path);

// FNV-1a over the exact file bytes; printed by the CLI so reruns are easy to
// compare at a glance.
std::uint64_t file_checksum(const std::string& path);

}  // namespace devlearn
