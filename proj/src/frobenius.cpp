// Copyright (c) 2026 the conecalc authors.
// SPDX-License-Identifier: Apache-2.0
