"""
Verb handlers and result models shared by the CLI and the HTTP backend.
"""
