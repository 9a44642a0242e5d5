"""pg-justify 测试."""
