#pragma once

#include <string>

#include "bqc/engine.hpp"

namespace bqc {

// One JSON object per line. Field names are part of the frozen format:
//   {"type":"qubit","wire":3,"amp":[re0,im0,re1,im1]}
//   {"type":"circuit","circuit":{...}}
//   {"type":"measured","slot":5,"bit":1}
//   {"type":"decision","slot":5,"bit":0}
//   {"type":"apply_z","slot":5,"wire":2,"bit":1}
//   {"type":"result","wires":[0,1],"amps":[re,im,...]}
//   {"type":"done"}
// Unknown fields are rejected; qubit amplitudes must be normalized to 1e-9.
std::string encode_frame(const Message& m);
Message decode_frame(const std::string& line);

std::string encode_public_circuit(const PublicCircuit& pub);
PublicCircuit decode_public_circuit(const std::string& text);

}  // namespace bqc
