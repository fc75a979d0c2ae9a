// Copyright 2026 The povmsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POVMSIM_IO_HPP
#define POVMSIM_IO_HPP

#include <string>

#include "povmsim/naimark.hpp"
#include "povmsim/partition.hpp"
#include "povmsim/pipeline.hpp"
#include "povmsim/povm.hpp"

namespace povmsim {

/// Malformed or unreadable document.
class IoError : public std::runtime_error {
  public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// JSON documents with fixed field names; numbers keep full double precision
// and the output is byte-stable for identical inputs.
//
// POVM:      dim, labels, effects (list of d x d arrays of [re, im], row-major)
// Witness:   target_dim, components: [{weight, projective, postproc}]
// Partition: n, subsets (1-based indices)
// Dilation:  base_dim, ambient_dim, layout ("block" | "tensor" with
//            ancilla_dim), projective, coarse
// State:     dim, rho (d x d array of [re, im])
// Certificate: input, c_found, witness, diagnostics

std::string write_povm(const Povm& m);
Povm read_povm(const std::string& text);

std::string write_partition(const Partition& p);
Partition read_partition(const std::string& text);

std::string write_witness(const SpWitness& w);
SpWitness read_witness(const std::string& text);

std::string write_dilation(const NaimarkDilation& d);
NaimarkDilation read_dilation(const std::string& text);

std::string write_state(const Matrix& rho);
Matrix read_state(const std::string& text);

std::string write_certificate(const SpCertificate& c);
SpCertificate read_certificate(const std::string& text);

/// True when the document carries a certificate (a "witness" field next to
/// "c_found") rather than a bare witness.
bool looks_like_certificate(const std::string& text);

/// True when the document is a dilation (has "ambient_dim").
bool looks_like_dilation(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace povmsim

#endif  // POVMSIM_IO_HPP
