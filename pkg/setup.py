from setuptools import find_packages, setup

setup(
    name="unitgroup-lab",
    version="1.0.0",
    description="Certificates for rings whose unit group is a symmetric or alternating group",
    packages=find_packages(include=["app", "app.*"]),
    python_requires=">=3.10",
    install_requires=[
        "fastapi>=0.109",
        "uvicorn[standard]>=0.27",
        "pydantic>=2.5",
        "pydantic-settings>=2.1",
        "numpy>=1.26",
        "pandas>=2.1",
        "python-dotenv>=1.0",
    ],
    extras_require={"test": ["pytest>=7.4", "httpx>=0.26"]},
    entry_points={"console_scripts": ["unitgroup-lab=app.cli:main"]},
)
