#pragma once

#include <stdexcept>
#include <string>

namespace dynamap {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed files, bad CLI arguments, violated format contracts. CLI exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

// A computation that cannot produce a result for the given inputs. CLI exit code 3.
class AlgorithmError : public Error {
 public:
  using Error::Error;
};

class ParticleFilterCollapse : public AlgorithmError {
 public:
  explicit ParticleFilterCollapse(int step_index = -1)
      : AlgorithmError("all particle likelihoods are zero" +
                       (step_index >= 0 ? " at step " + std::to_string(step_index)
                                        : std::string{})),
        step_index(step_index) {}

  int step_index;
};

class NoReferencePoints : public AlgorithmError {
 public:
  NoReferencePoints() : AlgorithmError("radio map has no reference points") {}
};

class InsufficientReferencePoints : public AlgorithmError {
 public:
  InsufficientReferencePoints(int k, int available)
      : AlgorithmError("k=" + std::to_string(k) + " exceeds the " +
                       std::to_string(available) + " reference points available") {}
};

class EmptySample : public AlgorithmError {
 public:
  EmptySample() : AlgorithmError("statistic requested over an empty sample") {}
};

}  // namespace dynamap
