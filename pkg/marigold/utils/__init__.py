"""Shared plumbing: errors, logging, configuration and text formats."""
