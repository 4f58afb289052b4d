#pragma once

#include <stdexcept>
#include <string>

namespace etdq {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dictionary, word-list, model or corpus file could not be loaded.
class LoadError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// A pluggable provider (name judge, oracle, embedder) failed. Callers log
// and skip; they never substitute a guessed value.
class ProviderError : public Error {
 public:
  using Error::Error;
};

class StoreError : public Error {
 public:
  using Error::Error;
};

// Another process holds the journal's writer lock.
class StoreBusy : public StoreError {
 public:
  using StoreError::StoreError;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

}  // namespace etdq
