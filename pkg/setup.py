from setuptools import setup  # pyright: ignore[reportMissingModuleSource]


if __name__ == "__main__":
    setup()
